#include <iostream>

#include "qes/cli.hpp"

int main(int argc, char** argv) { return qes::run_cli(argc, argv, std::cout, std::cerr); }
