#include <iostream>

#include "adhyp/cli.hpp"

int main(int argc, char** argv) { return adhyp::run_cli(argc, argv, std::cout, std::cerr); }
