#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSemanticFailure = 1;
inline constexpr int kExitInputError = 2;

/// Entry point for qgtool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qg::cli
