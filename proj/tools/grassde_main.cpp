#include <iostream>

#include "grassde/cli.hpp"

int main(int argc, char** argv) { return grassde::cli_main(argc, argv, std::cout, std::cerr); }
