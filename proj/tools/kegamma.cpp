#include <iostream>
#include <string>
#include <vector>

#include "kegamma/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kegamma::runCli(args, std::cout, std::cerr);
}
