#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plift {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitNoLift = 2;
inline constexpr int kExitDegenerate = 3;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plift
