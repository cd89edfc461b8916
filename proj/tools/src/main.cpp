#include <iostream>

#include "gatedist/cli.hpp"

int main(int argc, char** argv) {
    return gatedist::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
