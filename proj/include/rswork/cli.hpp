#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rswork::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kAssertionFailure = 1;
inline constexpr int kInputError = 2;

// args excludes the program name. The JSON report (or the DSL text for
// `pretty`) goes to out; errors are reported as JSON on out as well.
int run(const std::vector<std::string>& args, std::ostream& out);

// RSWORK_FIXTURES if set, else the fixture directory of the source tree.
std::string fixture_dir();

}  // namespace rswork::cli
