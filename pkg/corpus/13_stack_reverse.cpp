#include <iostream>
#include <stack>
using namespace std;

int main() {
    stack<string> st;
    int n = 0;
    cin >> n;
    for (int i = 0; i < n; i++) {
        string word;
        cin >> word;
        st.push(word);
    }
    while (!st.empty()) {
        cout << st.top() << " ";
        st.pop();
    }
    cout << endl;
    return 0;
}
