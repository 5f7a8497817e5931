#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return meaning::cli::runCli(argc, argv, std::cout, std::cerr); }
