#include <iostream>
#include <vector>
using namespace std;

int main() {
    int n = 0;
    cin >> n;
    vector<int> values;
    for (int i = 0; i < n; i++) {
        int x = 0;
        cin >> x;
        values.push_back(x);
    }
    int best = values[0];
    int total = 0;
    for (int i = 0; i < n; i++) {
        total += values[i];
        if (values[i] > best) {
            best = values[i];
        }
    }
    cout << "max " << best << endl;
    cout << "sum " << total << endl;
    return 0;
}
