#include <iostream>
#include <string>
#include <vector>

#include "fsparse/cli.hpp"

int main(int argc, char** argv) {
  return fsparse::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
