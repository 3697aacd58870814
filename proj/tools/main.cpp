#include <iostream>

#include "cdf/cli.hpp"

int main(int argc, char** argv) {
  return cdf::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
