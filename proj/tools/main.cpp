#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qgm2::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
