#include <iostream>
#include <string>
#include <vector>

#include "uisdial/cli/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return uisdial::cli::run(args, std::cin, std::cout, std::cerr);
}
