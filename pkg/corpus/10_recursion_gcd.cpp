#include <iostream>
using namespace std;

int gcd(int a, int b) {
    if (b == 0) {
        return a;
    }
    return gcd(b, a % b);
}

int power(int base, int exp) {
    if (exp == 0) {
        return 1;
    }
    return base * power(base, exp - 1);
}

int main() {
    cout << gcd(48, 36) << " " << gcd(17, 5) << endl;
    cout << power(2, 10) << " " << power(3, 4) << endl;
    return 0;
}
