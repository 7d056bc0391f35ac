#include <iostream>

#include "nsr/cli.hpp"

int main(int argc, char** argv) {
  return nsr::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
