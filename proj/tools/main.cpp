#include <iostream>

#include "lsr/cli.hpp"

int main(int argc, char** argv) { return lsr::run(argc, argv, std::cout, std::cerr); }
