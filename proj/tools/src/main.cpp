#include <iostream>
#include <string>
#include <vector>

#include "pbcli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pbcli::run_cli(args, std::cout, std::cerr);
}
