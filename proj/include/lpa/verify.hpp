#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpa/check.hpp"

namespace lpa {

struct VerifyOptions {
  /// Run only the block with this name; empty runs everything.
  std::string filter;
  /// Negative control: flips the sign of every computed determinant.
  bool inject_sign_fault = false;
  std::uint64_t seed = 20240611;
};

struct VerificationBlock {
  std::string name;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const { return all_passed(checks); }
};

/// Block names in run order.
const std::vector<std::string>& verification_block_names();

/// Runs the selected blocks. Throws std::invalid_argument for an unknown filter.
std::vector<VerificationBlock> run_verification(const VerifyOptions& options = {});

}  // namespace lpa
