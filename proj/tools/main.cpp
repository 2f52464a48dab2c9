#include <iostream>

#include "stripcert/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stripcert::cli::run(args, std::cout, std::cerr);
}
