#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpa {

/// A brute-force search was refused because its input exceeds the cap.
class SizeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation produced (or would produce) an object too large to handle.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SizeCaps {
  /// Largest finite group order searched for pointed automorphisms.
  std::size_t group_order = 10000;
  /// Largest vertex count accepted by graph isomorphism search.
  std::size_t isomorphism_vertices = 12;
};

/// Defaults, overridden by LPA_SIZE_CAP. The variable holds either a plain
/// integer (group order cap) or a comma list like "group=500,iso=10".
SizeCaps size_caps_from_env();

/// Parses the LPA_SIZE_CAP syntax; throws std::invalid_argument on junk.
SizeCaps parse_size_caps(const std::string& spec);

}  // namespace lpa
