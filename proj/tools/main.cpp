#include <iostream>
#include <string>
#include <vector>

#include "dsb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dsb::cli::run(args, std::cout, std::cerr);
}
