#include <iostream>
using namespace std;

int main() {
    int a = 17;
    int b = 5;
    cout << a + b << " " << a - b << " " << a * b << endl;
    cout << a / b << " " << a % b << endl;
    cout << -17 / 5 << " " << -17 % 5 << " " << 17 / -5 << endl;
    int c = 2 + 3 * 4 - 6 / 2;
    cout << c << endl;
    c += 10;
    c *= 2;
    c -= 4;
    c /= 3;
    c %= 7;
    cout << c << endl;
    return 0;
}
