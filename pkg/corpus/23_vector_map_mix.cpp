#include <iostream>
#include <vector>
#include <map>
using namespace std;

int main() {
    vector<int> rolls;
    rolls.push_back(3);
    rolls.push_back(1);
    rolls.push_back(3);
    rolls.push_back(6);
    rolls.push_back(1);
    rolls.push_back(3);
    map<int, int> freq;
    int n = rolls.size();
    for (int i = 0; i < n; i++) {
        int key = rolls[i];
        if (freq.count(key) == 0) {
            freq[key] = 1;
        } else {
            freq[key] = freq[key] + 1;
        }
    }
    cout << freq[1] << freq[3] << freq[6] << endl;
    cout << freq.size() << endl;
    return 0;
}
