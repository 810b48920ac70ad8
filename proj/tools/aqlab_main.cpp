#include <string>
#include <vector>

#include "aqlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aqlab::cli::dispatch(args);
}
