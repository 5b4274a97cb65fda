#include <iostream>

#include "riskched/cli.hpp"

int main(int argc, char** argv) { return riskched::cli::run(argc, argv, std::cout, std::cerr); }
