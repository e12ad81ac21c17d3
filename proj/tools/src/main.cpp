#include <iostream>

#include "dampwave/cli/app.hpp"

int main(int argc, char** argv) {
  return dampwave::cli::main_entry(argc, argv, std::cout, std::cerr);
}
