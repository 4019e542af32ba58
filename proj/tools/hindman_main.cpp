#include <iostream>
#include <string>
#include <vector>

#include "hindman/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hindman::run(args, std::cout, std::cerr);
}
