#include "diatomic/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return diatomic::run_cli(argc, argv, std::cout, std::cerr); }
