#include <iostream>

#include "stw/cli.hpp"

int main(int argc, char** argv) { return stw::cli::run(argc, argv, std::cout, std::cerr); }
