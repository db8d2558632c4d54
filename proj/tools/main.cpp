#include <iostream>

#include "ultraspec/cli.hpp"

int main(int argc, char** argv) {
    return ultraspec::cli::run(argc, argv, std::cout, std::cerr);
}
