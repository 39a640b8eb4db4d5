#include "qlogic/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qlogic::cli::run(argc, argv, std::cout, std::cerr); }
