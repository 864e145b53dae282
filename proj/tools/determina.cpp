#include <iostream>

#include "determina/cli.hpp"

int main(int argc, char **argv) { return determina::cli::run(argc, argv, std::cout, std::cerr); }
