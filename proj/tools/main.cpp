#include <iostream>

#include "ucblt/cli.hpp"

int main(int argc, char** argv) {
    return ucblt::cli::run(argc, argv, std::cout, std::cerr);
}
