#include <iostream>
#include <string>
#include <vector>

#include "rungs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rungs::cli::run(args, std::cout, std::cerr);
}
