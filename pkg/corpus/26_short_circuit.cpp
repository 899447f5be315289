#include <iostream>
using namespace std;

bool tattle(string label, bool value) {
    cout << "eval " << label << endl;
    return value;
}

int main() {
    if (tattle("left", false) && tattle("right", true)) {
        cout << "both" << endl;
    }
    if (tattle("a", true) || tattle("b", true)) {
        cout << "either" << endl;
    }
    bool mixed = tattle("x", true) && tattle("y", false);
    cout << mixed << endl;
    return 0;
}
