#include <iostream>
#include <string>
#include <vector>

#include "boxslash/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return boxslash::run(args, std::cin, std::cout, std::cerr);
}
