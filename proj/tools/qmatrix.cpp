#include <iostream>

#include "qmatrix/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qmatrix::run_cli(args, std::cout, std::cerr);
}
