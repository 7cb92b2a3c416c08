#include <iostream>

#include "dybe/cli.hpp"

int main(int argc, char** argv) { return dybe::cli::main(argc, argv, std::cout, std::cerr); }
