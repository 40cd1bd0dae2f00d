#include <iostream>
#include <string>
#include <vector>

#include "detcs/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return detcs::cli::run(args, std::cout, std::cerr);
}
