#include "antichain/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return antichain::cli::main_entry(argc, argv, std::cout, std::cerr);
}
