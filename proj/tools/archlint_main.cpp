#include <iostream>

#include "archlint/cli.hpp"

int main(int argc, char** argv) {
  return archlint::cli::run_cli(argc, argv, std::cout, std::cerr);
}
