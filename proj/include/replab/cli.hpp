#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace replab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDynamics = 3;
inline constexpr int kExitIo = 4;

// args excludes the program name, e.g. {"iterate", "--model", "II", ...}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace replab
