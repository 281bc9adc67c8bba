#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

const char* version();
std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t h);

// Runs one command. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pss::cli
