#include <iostream>
#include <string>
#include <vector>

#include "typea/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return typea::run_cli(args, std::cout, std::cerr);
}
