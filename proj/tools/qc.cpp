#include <iostream>
#include <string>
#include <vector>

#include "qc_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qc::run(args, std::cin, std::cout, std::cerr);
}
