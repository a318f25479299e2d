#include <iostream>

#include "symconj/cli.hpp"

int main(int argc, char** argv) { return symconj::run_cli(argc, argv, std::cout, std::cerr); }
