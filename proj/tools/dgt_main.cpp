#include "dgt/cli.hpp"

auto main(int argc, char** argv) -> int { return dgt::run(argc, argv); }
