#include <iostream>

#include "dbcat/cli.hpp"

int main(int argc, char** argv) { return dbcat::cli_main(argc, argv, std::cout, std::cerr); }
