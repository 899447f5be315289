#include <iostream>
#include <vector>
using namespace std;

void sort_values(vector<int>& v) {
    int n = v.size();
    for (int i = 0; i < n - 1; i++) {
        for (int j = 0; j < n - 1 - i; j++) {
            if (v[j] > v[j + 1]) {
                int tmp = v[j];
                v[j] = v[j + 1];
                v[j + 1] = tmp;
            }
        }
    }
}

int main() {
    vector<int> v;
    v.push_back(5);
    v.push_back(-2);
    v.push_back(9);
    v.push_back(0);
    v.push_back(3);
    sort_values(v);
    int n = v.size();
    for (int i = 0; i < n; i++) {
        cout << v[i] << " ";
    }
    cout << endl;
    return 0;
}
