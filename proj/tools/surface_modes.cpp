#include <iostream>

#include "surface_modes/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return surface_modes::cli::run_cli(args, std::cout, std::cerr);
}
