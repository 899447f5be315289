#include <iostream>
using namespace std;

int main() {
    int score = 77;
    if (score >= 90) {
        cout << "A" << endl;
    } else if (score >= 80) {
        cout << "B" << endl;
    } else if (score >= 70) {
        cout << "C" << endl;
    } else {
        cout << "F" << endl;
    }
    bool passing = score >= 60;
    if (passing) {
        cout << "passing" << endl;
    }
    if (score % 2 == 0) {
        cout << "even" << endl;
    } else {
        cout << "odd" << endl;
    }
    return 0;
}
