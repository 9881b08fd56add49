#include "tilekt/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tilekt::run_cli(argc, argv, std::cout, std::cerr); }
