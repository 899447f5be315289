#include <iostream>
using namespace std;

int main() {
    char grade = 'B';
    cout << grade << endl;
    if (grade >= 'A' && grade <= 'Z') {
        cout << "uppercase" << endl;
    }
    char c = 'x';
    cin >> c;
    if (c == 'y') {
        cout << "yes" << endl;
    } else {
        cout << "no:" << c << endl;
    }
    cout << 'q' << '!' << endl;
    return 0;
}
