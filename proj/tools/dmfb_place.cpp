#include <iostream>

#include "dmfb/cli.hpp"

int main(int argc, char** argv) { return dmfb::run_main(argc, argv, std::cout, std::cerr); }
