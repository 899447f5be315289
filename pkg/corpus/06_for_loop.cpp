#include <iostream>
using namespace std;

int main() {
    for (int i = 0; i < 10; i += 3) {
        cout << i << " ";
    }
    cout << endl;
    int product = 1;
    for (int k = 1; k <= 6; k++) {
        product *= k;
    }
    cout << product << endl;
    return 0;
}
