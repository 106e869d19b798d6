#include "qcalc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qcalc::run_cli(argc, argv, std::cout, std::cerr); }
