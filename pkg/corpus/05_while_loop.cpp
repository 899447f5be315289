#include <iostream>
using namespace std;

int main() {
    int n = 5;
    while (n > 0) {
        cout << n << " ";
        n--;
    }
    cout << endl;
    int total = 0;
    int i = 1;
    while (i <= 100) {
        total += i;
        i++;
    }
    cout << total << endl;
    return 0;
}
