#include <iostream>
#include <string>
#include <vector>

#include "kurepa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kurepa::cli::run(args, std::cout, std::cerr);
}
