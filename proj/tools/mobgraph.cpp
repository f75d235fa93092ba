#include <iostream>
#include <string>
#include <vector>

#include "mobgraph/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mobgraph::run_cli(args, std::cout, std::cerr);
}
