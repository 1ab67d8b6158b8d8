#include <iostream>

#include "primemat/cli.hpp"

int main(int argc, char** argv) { return primemat::cli::run(argc, argv, std::cout, std::cerr); }
