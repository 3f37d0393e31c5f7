#include <iostream>

#include "bkvg/cli.hpp"

int main(int argc, char** argv) { return bkvg::run_cli(argc, argv, std::cout, std::cerr); }
