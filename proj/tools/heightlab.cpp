#include <iostream>

#include "heightlab/cli.hpp"

int main(int argc, char** argv) { return heightlab::cli_main(argc, argv, std::cout, std::cerr); }
