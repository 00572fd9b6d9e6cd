#pragma once

#include <cstdint>

namespace qfiso {

inline constexpr const char* kVersion = "1.0.0";

/// Seed used when none is given, so bare runs are reproducible.
inline constexpr std::uint64_t kDefaultSeed = 1729;

}  // namespace qfiso
