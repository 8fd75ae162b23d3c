#include "kzero/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto outcome = kzero::cli::run(args, std::cin);
  std::cout << outcome.output;
  return outcome.status;
}
