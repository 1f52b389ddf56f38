#include <iostream>

#include "treepack/cli.hpp"

int main(int argc, char** argv) { return treepack::cli::run(argc, argv, std::cout, std::cerr); }
