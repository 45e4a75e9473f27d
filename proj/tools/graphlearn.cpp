#include <iostream>

#include "graphlearn/cli.hpp"

int main(int argc, char** argv) {
  return graphlearn::run_cli(argc, argv, std::cout, std::cerr);
}
