#include <iostream>
#include <unordered_map>
using namespace std;

int main() {
    unordered_map<int, int> h;
    h[8] = 80;
    h[14] = 140;
    h[-1] = 10;
    cout << h[8] << " " << h[14] << " " << h[-1] << endl;
    h.insert({20, 200});
    h[8] = 88;
    cout << h[8] << " " << h.count(20) << " " << h.count(99) << endl;
    cout << h.erase(14) << h.erase(14) << " " << h.size() << endl;
    return 0;
}
