#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uisdial::cli {

// Exit codes: 0 success, 1 runtime failure ("error[<category>]: <message>"
// on err), 2 usage error (message and usage text on err).
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. Data goes to out, logs and errors to err;
// interactive commands read from in.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace uisdial::cli
