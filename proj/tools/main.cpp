#include <iostream>
#include <string>
#include <vector>

#include "gapamp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gapamp::run_cli(args, std::cout, std::cerr);
}
