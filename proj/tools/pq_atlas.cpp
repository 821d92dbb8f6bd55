// pq-atlas command line interface (filled in as modules land).
#include <iostream>

int main() {
    std::cout << "pq-atlas: not wired up yet\n";
    return 0;
}
