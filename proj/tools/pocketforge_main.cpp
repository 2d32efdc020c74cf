#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "pocketforge/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  pocketforge::CliContext ctx{std::cin, std::cout, std::cerr, std::nullopt};
  if (const char* store = std::getenv("POCKETFORGE_STORE")) ctx.store_env = store;
  const int code = pocketforge::run_cli(args, ctx);
  std::cout.flush();
  return code;
}
