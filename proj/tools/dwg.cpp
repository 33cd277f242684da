#include <iostream>

#include "dwg/cli.hpp"

int main(int argc, char** argv) { return dwg::cli::run(argc, argv, std::cout, std::cerr); }
