#include "slt_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return slt::cli::run_main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
