#include <iostream>
#include <string>
#include <vector>

#include "thnorm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return thnorm::run(args, std::cout, std::cerr);
}
