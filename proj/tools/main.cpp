#include <iostream>

#include "cli_core.hpp"

int main(int argc, char** argv) {
  normlab::cli::RunConfig cfg;
  const int status = normlab::cli::parse_config(argc, argv, cfg, std::cerr);
  if (status != 0) return status > 0 ? status : 0;  // -1 signals --help
  return normlab::cli::run(cfg, std::cout, std::cerr);
}
