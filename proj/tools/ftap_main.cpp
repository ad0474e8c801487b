#include <iostream>

#include "ftap/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ftap::cli::run(args, std::cout, std::cerr);
}
