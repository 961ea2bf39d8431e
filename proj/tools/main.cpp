#include <iostream>

#include "pqinv/cli.hpp"

int main(int argc, char** argv) { return pqinv::cli::run(argc, argv, std::cout, std::cerr); }
