#pragma once

#include <string>
#include <vector>

namespace lpa {

enum class CheckStatus { Pass, Fail, Skip };

std::string to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Fail;
  std::string details;

  bool passed() const { return status == CheckStatus::Pass; }
};

inline Check make_check(std::string name, bool ok, std::string details = {}) {
  return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(details)};
}

/// No check failed (skips are not failures).
bool all_passed(const std::vector<Check>& checks);

}  // namespace lpa
