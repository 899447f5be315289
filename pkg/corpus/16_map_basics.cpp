#include <iostream>
#include <map>
using namespace std;

int main() {
    map<int, int> ages;
    ages[31] = 300;
    ages.insert({12, 120});
    ages[7] = 70;
    ages[19] = 190;
    cout << ages[12] << " " << ages[31] << endl;
    ages[12] = 125;
    cout << ages[12] << endl;
    cout << "count7=" << ages.count(7) << " count8=" << ages.count(8) << endl;
    cout << "erased=" << ages.erase(7) << " again=" << ages.erase(7) << endl;
    int n = ages.size();
    cout << "size " << n << endl;
    return 0;
}
