#include <iostream>

#include "lmzv/cli.hpp"

int main(int argc, char** argv) { return lmzv::cli::run(argc, argv, std::cout, std::cerr); }
