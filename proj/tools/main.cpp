#include <iostream>

#include "hw/cli.hpp"

int main(int argc, char** argv) {
  return hw::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
