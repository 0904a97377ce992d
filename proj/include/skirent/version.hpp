#pragma once

#include <cstdint>
#include <string>

namespace skirent {

inline constexpr const char* kToolName = "skirent-lab";
inline constexpr const char* kVersion = "0.1.0";

/// Comment line carried by every CSV output for provenance.
inline std::string provenance_line(std::uint64_t seed) {
  return std::string("# ") + kToolName + " v" + kVersion + " seed=" + std::to_string(seed);
}

}  // namespace skirent
