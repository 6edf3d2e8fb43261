#include <iostream>
#include <string>
#include <vector>

#include "bcirc/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return bcirc::run_cli(args, std::cin, std::cout, std::cerr);
}
