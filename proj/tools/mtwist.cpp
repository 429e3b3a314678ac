#include <iostream>

#include "mtwist/cli.hpp"

int main(int argc, char** argv) {
  return mtwist::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
