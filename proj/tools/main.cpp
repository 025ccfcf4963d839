#include <iostream>

#include "olgdebt/cli.hpp"

int main(int argc, char** argv) { return olgdebt::cli::run(argc, argv, std::cout, std::cerr); }
