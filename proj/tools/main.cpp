#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cgkit::cli::run(argc, argv, std::cout, std::cerr); }
