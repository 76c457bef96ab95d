#include <iostream>

#include "atree/cli.hpp"

int main(int argc, char** argv) {
  return atree::run_cli(argc, argv, std::cout, std::cerr);
}
