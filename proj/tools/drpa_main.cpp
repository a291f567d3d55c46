#include <iostream>
#include <string>
#include <vector>

#include "drpa/scenario_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return drpa::run_cli(args, std::cout, std::cerr);
}
