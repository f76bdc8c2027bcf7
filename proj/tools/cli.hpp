#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smg::cli {

// Exit codes: 0 ok, 1 negative verdict (class missing, connected, counterexample),
// 2 usage error, 3 domain error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smg::cli
