#include <iostream>

#include "rowfinite/cli.hpp"

int main(int argc, char** argv) {
  return rowfinite::cli::run_cli(argc, argv, std::cout, std::cerr);
}
