#include <iostream>

#include "symctl/cli.hpp"

int main(int argc, char** argv) { return symctl::cli::run_cli(argc, argv, std::cout, std::cerr); }
