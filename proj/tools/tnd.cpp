#include <iostream>

#include "tnd/cli.hpp"

int main(int argc, char** argv) { return tnd::cli::main(argc, argv, std::cout, std::cerr); }
