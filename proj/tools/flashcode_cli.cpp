#include <iostream>
#include <string>
#include <vector>

#include "flashcode/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return flashcode::cli::run(args, std::cin, std::cout, std::cerr);
}
