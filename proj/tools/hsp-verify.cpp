#include <iostream>
#include <string>
#include <vector>

#include "hsp/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return hsp::run_cli(args, std::cout, std::cerr);
}
