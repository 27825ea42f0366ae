#include <iostream>

#include "aut/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aut::cli::run(args, std::cout, std::cerr);
}
