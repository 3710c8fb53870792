#include <iostream>

#include "grpd/cli.hpp"

int main(int argc, char** argv) {
  return grpd::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
