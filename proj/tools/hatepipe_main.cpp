#include <iostream>

#include "hatepipe/cli.hpp"

int main(int argc, char** argv) { return hatepipe::run_cli(argc, argv, std::cout, std::cerr); }
