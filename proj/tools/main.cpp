#include <iostream>

#include "qecwit/cli.hpp"

int main(int argc, char** argv) { return qecwit::run_cli(argc, argv, std::cout, std::cerr); }
