#include <iostream>

#include "eok/cli.hpp"

int main(int argc, char** argv) { return eok::cli_dispatch(argc, argv, std::cout, std::cerr); }
