#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/check.hpp"

namespace lpa {

/// A hypothesis of a construction does not hold; the message names it.
class PreconditionError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

/// Proposed images of the generators of `source` inside `target`.
struct FamilyImages {
  AlgebraContext source;
  AlgebraContext target;
  std::map<std::string, AlgebraElement> vertices;
  std::map<std::string, AlgebraElement> edges;
  std::map<std::string, AlgebraElement> ghosts;
};

/// Ghost images are the involutions of the edge images.
FamilyImages images_with_star_ghosts(const AlgebraContext& source, const AlgebraContext& target,
                                     std::map<std::string, AlgebraElement> vertices,
                                     std::map<std::string, AlgebraElement> edges);

struct FamilyReport {
  /// One check per relation family plus generator coverage; details list
  /// the failing instances.
  std::vector<Check> checks;
  bool passed() const { return all_passed(checks); }
};

/// Checks relations (1)-(4) on all instances and the summation relation at
/// every vertex of source.complete_at().
FamilyReport check_relative_family(const FamilyImages& images);

/// Images that passed check_relative_family; the only way to build one is
/// verify(), so an unchecked family can never be applied.
class VerifiedHomomorphism {
 public:
  /// Throws PreconditionError listing the failed checks.
  static VerifiedHomomorphism verify(FamilyImages images);

  const FamilyImages& images() const { return images_; }
  const FamilyReport& report() const { return report_; }

 private:
  VerifiedHomomorphism(FamilyImages images, FamilyReport report)
      : images_(std::move(images)), report_(std::move(report)) {}
  FamilyImages images_;
  FamilyReport report_;
};

/// Extends the images multiplicatively over each monomial and linearly over terms.
AlgebraElement induced_map_apply(const VerifiedHomomorphism& phi, const AlgebraElement& x);

VerifiedHomomorphism identity_homomorphism(const AlgebraContext& ctx);

/// C(E, V) -> L(E(V)): v -> v + v', e -> e + e' for the primed copies,
/// other generators to their namesakes.
FamilyImages cohn_isomorphism_images(const Graph& g, const std::set<std::string>& complete_at);

struct EndomorphismResult {
  std::vector<Check> preconditions;
  FamilyImages images;
};

/// Images of x -> p x p* + q x q*. Requires p*p = q*q = 1 and p*q = q*p = 0;
/// throws PreconditionError naming the offending product otherwise.
EndomorphismResult conjugation_pair_endomorphism(const AlgebraContext& ctx, const AlgebraElement& p,
                                                 const AlgebraElement& q);

struct MvnResult {
  AlgebraElement x;
  AlgebraElement y;
  std::vector<Check> checks;
  bool passed() const { return all_passed(checks); }
};

/// x = e v f, y = f w e for idempotents e = v w and f = w v. Throws
/// PreconditionError naming the hypothesis that fails.
MvnResult mvn_witnesses(const AlgebraElement& e, const AlgebraElement& f, const AlgebraElement& v,
                        const AlgebraElement& w);

struct EquivalencePair {
  AlgebraElement x;
  AlgebraElement y;
  AlgebraElement e;
  AlgebraElement f;
};

struct ConjugatorResult {
  AlgebraElement a;
  AlgebraElement b;
  std::vector<Check> checks;
  bool passed() const { return all_passed(checks); }
};

/// a = sum x_i, b = sum y_i; checks a b = b a = 1 and b e_k a = f_k. The
/// e_i and the f_i must be orthogonal idempotents each summing to 1.
ConjugatorResult assemble_conjugator(const AlgebraContext& ctx, const std::vector<EquivalencePair>& pairs);

/// Class equations in K0 of the two Cohn-graph algebras of E_* and E_**.
std::vector<Check> verify_cohn_k0_classes();

}  // namespace lpa
