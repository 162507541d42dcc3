#include <iostream>

#include "conevol/cli.hpp"

int main(int argc, char** argv) {
  return conevol::cli::main_entry(argc, argv, std::cout, std::cerr);
}
