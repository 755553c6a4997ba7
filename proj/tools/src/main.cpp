#include <iostream>

#include "infokernel_cli/cli.hpp"

int main(int argc, char** argv) {
  return infokernel::cli::run(argc, argv, std::cout, std::cerr);
}
