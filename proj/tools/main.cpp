#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const reflect::CommandResult r = reflect::execute_command(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
