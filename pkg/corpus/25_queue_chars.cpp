#include <iostream>
#include <queue>
using namespace std;

int main() {
    queue<char> letters;
    int n = 0;
    cin >> n;
    for (int i = 0; i < n; i++) {
        char c = ' ';
        cin >> c;
        letters.push(c);
    }
    int vowels = 0;
    while (!letters.empty()) {
        char c = letters.front();
        letters.pop();
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') {
            vowels++;
        }
    }
    cout << "vowels " << vowels << endl;
    return 0;
}
