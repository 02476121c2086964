#include <iostream>
#include <string>
#include <vector>

#include "stone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return stone::run_cli(args, std::cout, std::cerr);
}
