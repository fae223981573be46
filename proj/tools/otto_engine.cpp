#include <iostream>

#include "otto/cli.hpp"

int main(int argc, char** argv) {
  return otto::cli::main_entry(argc, argv, std::cout, std::cerr);
}
