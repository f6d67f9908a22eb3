#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) { return cdok::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
