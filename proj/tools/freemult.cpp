#include <iostream>

#include "freemult/cli.hpp"

int main(int argc, char **argv) { return freemult::cli::run(argc, argv, std::cout, std::cerr); }
