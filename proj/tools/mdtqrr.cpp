#include "mdtq/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mdtq::cli::run(argc, argv, std::cout, std::cerr); }
