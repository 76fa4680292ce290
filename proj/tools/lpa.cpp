#include <iostream>

#include "lpa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lpa::run_cli(args, std::cout, std::cerr);
}
