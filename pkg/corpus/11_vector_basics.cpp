#include <iostream>
#include <vector>
using namespace std;

int main() {
    vector<int> v;
    for (int i = 0; i < 6; i++) {
        v.push_back(i * i);
    }
    int n = v.size();
    cout << "size " << n << endl;
    v[2] = 99;
    int total = 0;
    for (int i = 0; i < n; i++) {
        total += v[i];
    }
    cout << "total " << total << endl;
    v.pop_back();
    v.pop_back();
    n = v.size();
    cout << "now " << n << " last " << v[n - 1] << endl;
    if (v.empty()) {
        cout << "empty" << endl;
    } else {
        cout << "not empty" << endl;
    }
    return 0;
}
