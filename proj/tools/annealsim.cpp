#include <iostream>

#include "annealsim/cli.hpp"

int main(int argc, char** argv) { return annealsim::cli::run(argc, argv, std::cout, std::cerr); }
