#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpa/check.hpp"
#include "lpa/graph.hpp"
#include "lpa/invariants.hpp"
#include "lpa/limits.hpp"
#include "lpa/matrix.hpp"

namespace lpa {

/// A classification procedure was called outside its hypotheses.
class ClassifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VerdictTag { Isomorphic, NotIsomorphicByInvariant, AKPInstance, Undecided, NotApplicable };

std::string to_string(VerdictTag t);

struct ClassificationVerdict {
  VerdictTag tag = VerdictTag::Undecided;
  /// Which criterion or obstruction the verdict rests on.
  std::string justification;
  GraphInvariants left;
  GraphInvariants right;
  /// Pointed K0 isomorphism, re-validated, when one was found.
  std::optional<IntMatrix> witness;
};

/// Invariants first; L(g) and L(h) are only declared isomorphic when the
/// pointed K0 groups are isomorphic by a validated witness and the
/// determinants of I - A^t agree exactly. Opposite signs give AKPInstance.
ClassificationVerdict compare(const Graph& g, const Graph& h, const SizeCaps& caps = size_caps_from_env());

struct ReductionChain {
  Graph double_splice;  // e spliced with E_** at u
  Graph single_splice;  // e spliced with E_* at u
  std::vector<Check> checks;
  bool passed() const { return all_passed(checks); }
};

/// For SPI e, f with isomorphic K0 groups and opposite determinant signs:
/// checks K0(e_{u,--}) = K0(e) with equal determinant and K0(e_{u,-}) =
/// K0(f) with equal determinant. The unit class is not compared, so
/// f = cuntz_splice(e, u) qualifies. No ring isomorphism is claimed.
/// Throws ClassifyError naming the failed hypothesis.
ReductionChain reduction_chain(const Graph& e, const Graph& f, const std::string& u);

struct SignQuestion {
  int sign_left = 0;
  int sign_right = 0;
  /// Pointed K0 agrees but the determinant signs differ.
  bool open_instance = false;
  std::string tag;  // "open-question instance" or "signs equal" / "invariants differ"
};

/// Throws ClassifyError if either graph fails the SPI check.
SignQuestion sign_question_instance(const Graph& g, const Graph& h, const SizeCaps& caps = size_caps_from_env());

}  // namespace lpa
