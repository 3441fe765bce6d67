#include <iostream>

#include "vsets/cli.hpp"

int main(int argc, char** argv) { return vsets::cli::run(argc, argv, std::cout, std::cerr); }
