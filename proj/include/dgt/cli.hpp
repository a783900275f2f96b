#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dgt {

// Exit codes: 0 success, Found or valid; 1 NotContained or invalid; 2 usage or input
// errors; 3 Indeterminate (budget or size limits).
auto run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) -> int;
auto run(int argc, char** argv) -> int;

} // namespace dgt
