#include <iostream>

#include "pairalg/cli.hpp"

int main(int argc, char** argv) { return pairalg::cli::run(argc, argv, std::cout, std::cerr); }
