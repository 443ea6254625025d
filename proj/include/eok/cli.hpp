#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eok {

// Exit codes: 0 success, 1 domain or usage error, 2 I/O error.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eok
