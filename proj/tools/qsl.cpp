#include <iostream>

#include "gqsl/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gqsl::cli::run_cli(args, std::cout, std::cerr);
}
