#include <iostream>
#include <string>
#include <vector>

#include "batrel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return batrel::run_cli(args, std::cout, std::cerr);
}
