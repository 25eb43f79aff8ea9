#include <iostream>

int main()
{
    std::cout << "sapc: placeholder\n";
    return 0;
}
