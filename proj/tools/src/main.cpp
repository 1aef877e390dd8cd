#include <iostream>
#include <string>
#include <vector>

#include "emregion_cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return emregion::cli::run(args, std::cout, std::cerr);
}
