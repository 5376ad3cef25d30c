#include <iostream>
#include <string>
#include <vector>

#include "ehinv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return ehinv::cli::run_cli(args, std::cout, std::cerr);
}
