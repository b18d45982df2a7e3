#include <iostream>

#include "sfr/cli.hpp"

int main(int argc, char** argv) { return sfr::cli_main(argc, argv, std::cout, std::cerr); }
