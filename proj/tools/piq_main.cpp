#include <iostream>

#include "piq/cli.hpp"

int main(int argc, char** argv) {
    return piq::cli::run(argc, argv, std::cout, std::cerr);
}
