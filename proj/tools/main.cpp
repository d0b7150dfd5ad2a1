#include <iostream>
#include <string>
#include <vector>

#include "smoothweyl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return smoothweyl::cli_dispatch(args, std::cout, std::cerr);
}
