#include "cohlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cohlab::cli_main(argc, argv, std::cout, std::cerr); }
