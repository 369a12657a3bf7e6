#include <iostream>
#include <string>
#include <vector>

#include "rswork/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rswork::cli::run(args, std::cout);
}
