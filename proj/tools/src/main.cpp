#include <iostream>
#include <string>
#include <vector>

#include "nlscheck/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nlscheck::cli::run(args, std::cout, std::cerr);
}
