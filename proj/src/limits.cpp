#include "lpa/limits.hpp"

#include <cstdlib>
#include <sstream>

namespace lpa {

namespace {

std::size_t parse_count(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("LPA_SIZE_CAP: not a number: '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("LPA_SIZE_CAP: not a number: '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

SizeCaps parse_size_caps(const std::string& spec) {
  SizeCaps caps;
  if (spec.empty()) return caps;
  if (spec.find('=') == std::string::npos) {
    caps.group_order = parse_count(spec);
    return caps;
  }
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("LPA_SIZE_CAP: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::size_t value = parse_count(item.substr(eq + 1));
    if (key == "group") {
      caps.group_order = value;
    } else if (key == "iso") {
      caps.isomorphism_vertices = value;
    } else {
      throw std::invalid_argument("LPA_SIZE_CAP: unknown key '" + key + "'");
    }
  }
  return caps;
}

SizeCaps size_caps_from_env() {
  const char* env = std::getenv("LPA_SIZE_CAP");
  if (env == nullptr) return {};
  return parse_size_caps(env);
}

}  // namespace lpa
