#include <iostream>

#include "heredilat/cli.hpp"

int main(int argc, char** argv) {
    return heredilat::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
