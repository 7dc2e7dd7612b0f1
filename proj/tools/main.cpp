#include "pairorbit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return pairorbit::cli::run(argc, argv, std::cout, std::cerr);
}
