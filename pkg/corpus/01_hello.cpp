#include <iostream>
using namespace std;

int main() {
    cout << "Hello, trace!" << endl;
    cout << "line two" << endl;
    return 0;
}
