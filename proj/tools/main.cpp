#include <iostream>

#include "qta/cli.hpp"

int main(int argc, char** argv) {
  return qta::cli::run(argc, argv, std::cout, std::cerr);
}
