#include <iostream>
#include <queue>
using namespace std;

int main() {
    queue<int> q;
    for (int i = 1; i <= 5; i++) {
        q.push(i * 10);
    }
    cout << q.front() << " " << q.back() << endl;
    int rounds = 3;
    for (int i = 0; i < rounds; i++) {
        int head = q.front();
        q.pop();
        q.push(head + 1);
    }
    int n = q.size();
    for (int i = 0; i < n; i++) {
        cout << q.front() << " ";
        q.pop();
    }
    cout << endl;
    return 0;
}
