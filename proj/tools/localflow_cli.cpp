#include <iostream>
#include <string>
#include <vector>

#include "localflow/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return localflow::run_cli(args, std::cout, std::cerr);
}
