#include <iostream>

#include "coopmac/cli.hpp"

int main(int argc, char** argv) { return coopmac::dispatch(argc, argv, std::cout, std::cerr); }
