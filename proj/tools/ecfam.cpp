#include <iostream>

#include "ecfam/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ecfam::run_cli(args, std::cout, std::cerr);
}
