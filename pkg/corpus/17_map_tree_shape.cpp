#include <iostream>
#include <map>
using namespace std;

int main() {
    map<int, int> t;
    t[5] = 50;
    t[8] = 80;
    t[6] = 60;
    cout << t.count(6) << t.count(5) << t.count(8) << endl;
    t.erase(6);
    cout << t.count(6) << " " << t.size() << endl;
    t[2] = 20;
    t[9] = 90;
    t.erase(5);
    cout << t[2] + t[8] + t[9] << " " << t.size() << endl;
    return 0;
}
