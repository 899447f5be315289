#include <iostream>
#include <deque>
using namespace std;

int main() {
    deque<int> d;
    for (int i = 1; i <= 4; i++) {
        d.push_back(i);
        d.push_front(-i);
    }
    int n = d.size();
    for (int i = 0; i < n; i++) {
        cout << d[i] << " ";
    }
    cout << endl;
    cout << d.front() << " " << d.back() << endl;
    d.pop_front();
    d.pop_back();
    cout << d.front() << " " << d.back() << endl;
    return 0;
}
