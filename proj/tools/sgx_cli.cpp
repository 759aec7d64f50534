#include <iostream>

#include "sgx/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sgx::run_command(args, std::cout, std::cerr);
}
