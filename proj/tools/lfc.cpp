#include <iostream>

#include "lfc/cli.hpp"

int main(int argc, char** argv) { return lfc::cli::run(argc, argv, std::cout, std::cerr); }
