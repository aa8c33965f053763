#include <iostream>

#include "qvm/cli.hpp"

int main(int argc, char** argv) {
    return qvm::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
