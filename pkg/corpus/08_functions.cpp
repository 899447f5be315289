#include <iostream>
using namespace std;

int square(int x) {
    return x * x;
}

double average(int a, int b) {
    return (a + b) / 2.0;
}

void shout(string word) {
    cout << word << "!" << endl;
}

int clamp(int value, int low, int high) {
    if (value < low) {
        return low;
    }
    if (value > high) {
        return high;
    }
    return value;
}

int main() {
    cout << square(7) << endl;
    cout << average(3, 4) << endl;
    shout("tests");
    cout << clamp(15, 0, 10) << " " << clamp(-2, 0, 10) << " " << clamp(5, 0, 10) << endl;
    return 3;
}
