#include <iostream>

#include "kirbycalc/cli.hpp"

int main(int argc, char** argv) { return kirbycalc::run_cli(argc, argv, std::cout, std::cerr); }
