#include <iostream>

#include "ajt/cli.hpp"

int main(int argc, char** argv) { return ajt::run_cli(argc, argv, std::cout, std::cerr); }
