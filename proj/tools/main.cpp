#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  return entrobust::cli::run({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
