#include <iostream>
#include <string>
using namespace std;

string repeat(string word, int times) {
    string result = "";
    for (int i = 0; i < times; i++) {
        result = result + word;
    }
    return result;
}

int main() {
    string a = "data";
    string b = "structures";
    string joined = a + " " + b;
    cout << joined << endl;
    cout << repeat("ab", 3) << endl;
    if (a < b) {
        cout << "ordered" << endl;
    }
    string word;
    cin >> word;
    cout << "read:" << word << endl;
    return 0;
}
