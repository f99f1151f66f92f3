#include <iostream>
#include <string>
#include <vector>

#include "bjorck/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bjorck::cli::run(args, std::cout, std::cerr);
}
