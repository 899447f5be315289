#include <iostream>
#include <unordered_map>
using namespace std;

int main() {
    unordered_map<int, int> h;
    for (int k = 0; k < 30; k += 6) {
        h[k] = k * 2;
    }
    int total = 0;
    for (int k = 0; k < 30; k += 6) {
        total += h[k];
    }
    cout << total << " " << h.size() << endl;
    h.erase(12);
    cout << h.count(12) << h.count(18) << " " << h.size() << endl;
    return 0;
}
