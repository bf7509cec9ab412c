#include <iostream>

#include "cusp/cli/commands.hpp"

int main(int argc, char** argv) { return cusp::cli::run_cli(argc, argv, std::cout, std::cerr); }
