#include <iostream>

#include "tzcl/cli.hpp"

int main(int argc, char** argv) {
  return tzcl::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
