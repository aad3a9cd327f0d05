#include <iostream>

#include "depsent/cli.hpp"

int main(int argc, char** argv) {
  return depsent::run_cli(argc, argv, std::cout, std::cerr);
}
