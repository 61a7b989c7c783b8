#include <iostream>

#include "duelbench/cli.hpp"

int main(int argc, char** argv) { return duelbench::run_cli(argc, argv, std::cout, std::cerr); }
