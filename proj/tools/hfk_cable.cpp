#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hfkcable/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hfk::cli::run(args, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
