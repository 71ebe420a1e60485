#include <iostream>

#include "monge/cli.hpp"

int main(int argc, char** argv) {
  return monge::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
