#include <iostream>
#include <string>
#include <vector>

#include "gazesynth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gazesynth::cli::run(args, std::cout, std::cerr);
}
