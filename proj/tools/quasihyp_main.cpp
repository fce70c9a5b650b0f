#include <string>
#include <vector>

#include "quasihyp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return quasihyp::run(args);
}
