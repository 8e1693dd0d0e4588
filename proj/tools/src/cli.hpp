#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace icsheaf::cli {

inline constexpr int kPass = 0;
inline constexpr int kError = 1;
inline constexpr int kFail = 2;

// args excludes the program name. Reports go to `out` as JSON, diagnostics
// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icsheaf::cli
