#include <iostream>
using namespace std;

int main() {
    double x = 2.0 / 3.0;
    double y = 1.5;
    cout << x << endl;
    cout << x + y << " " << x * y << endl;
    cout << 100000.5 << " " << 1000000.0 << " " << 0.0001 << endl;
    double z = 7;
    cout << z / 2 << endl;
    cout << 3.14159265 << endl;
    return 0;
}
