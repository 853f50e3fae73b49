#include <iostream>
#include <string>
#include <vector>

#include "steal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return steal::cli::run(std::move(args), std::cout, std::cerr);
}
