#include <iostream>
#include <string>
#include <vector>

#include "conerank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return conerank::cli::run(args, std::cout, std::cerr);
}
