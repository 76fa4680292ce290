#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/limits.hpp"
#include "lpa/matrix.hpp"

namespace lpa {

class KTheoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coordinates in Z^r (+) Z/d1 (+) ... (+) Z/dt: r free coordinates first,
/// then one coordinate per torsion factor.
struct K0Element {
  std::vector<Integer> coords;

  friend bool operator==(const K0Element&, const K0Element&) = default;
};

/// Finitely generated abelian group in invariant-factor form with a
/// distinguished element (the unit class for K0 of a unital algebra).
struct PointedAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;  // each >= 2, d_i | d_{i+1}
  K0Element unit_class;

  std::size_t dimension() const { return free_rank + invariant_factors.size(); }
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_finite() const { return free_rank == 0; }
  /// Group order; only meaningful when is_finite().
  Integer order() const;

  /// Reduces torsion coordinates into [0, d_i). Throws DimensionError.
  K0Element reduce(K0Element x) const;
  K0Element zero() const { return K0Element{std::vector<Integer>(dimension())}; }
  K0Element add(const K0Element& x, const K0Element& y) const;
  K0Element negate(const K0Element& x) const;

  /// Same rank and invariant factors (the unit is ignored).
  bool same_group(const PointedAbelianGroup& other) const {
    return free_rank == other.free_rank && invariant_factors == other.invariant_factors;
  }

  friend bool operator==(const PointedAbelianGroup&, const PointedAbelianGroup&) = default;
};

/// "Z^r (+) Z/d1 (+) ... ; unit=(c1,...,ck)". The free part prints as "Z"
/// for rank one and the trivial group prints as "Z^0".
std::string render(const PointedAbelianGroup& p);
std::string render_group(const PointedAbelianGroup& p);
std::string render(const K0Element& x);

/// Z^{E^0} modulo [v] = sum over edges e out of v of [r(e)], one relation per
/// regular vertex, in canonical coordinates.
struct K0Presentation {
  PointedAbelianGroup group;
  std::vector<std::string> vertex_names;
  std::vector<K0Element> vertex_classes;  // by vertex index
  IntMatrix relations;                    // |E^0| x |regular|, one column per relation
  IntMatrix coordinate_map;               // dimension x |E^0|: Z^{E^0} -> coordinates

  /// Class of a vertex by name; throws GraphError for unknown names.
  K0Element class_of(const std::string& vertex) const;
  /// Class of an integer combination of vertices.
  K0Element class_of(const std::vector<Integer>& multiplicities) const;
};

K0Presentation k0_presentation(const Graph& g);

/// Coordinate-wise equality after reduction. Throws DimensionError when
/// either element does not live in p's decomposition.
bool k0_element_equal(const PointedAbelianGroup& p, const K0Element& x, const K0Element& y);

struct PointedIsoVerdict {
  enum class Kind { Yes, No, Undecided };
  Kind kind = Kind::Undecided;
  /// For Yes: square matrix on coordinates (torsion rows read mod d_i)
  /// mapping p's unit to q's unit.
  std::optional<IntMatrix> witness;
  std::string reason;
};

std::string to_string(PointedIsoVerdict::Kind k);

/// Decides whether a unit-preserving isomorphism p -> q exists.
///  * different rank or factors: No
///  * pure free: Yes iff the gcds of the unit coordinates agree
///  * finite of order <= cap: orbit search under Aut; larger throws SizeCapError
///  * mixed: gcd test plus orbit search modulo g*T, Undecided when T is over the cap
PointedIsoVerdict pointed_iso_exists(const PointedAbelianGroup& p, const PointedAbelianGroup& q,
                                     const SizeCaps& caps = size_caps_from_env());

/// Re-checks a witness: well defined on the torsion quotient, bijective,
/// and unit to unit. Bijectivity of the torsion block is checked by
/// enumeration, so the torsion order must be within caps.group_order.
bool validate_pointed_iso(const PointedAbelianGroup& p, const PointedAbelianGroup& q, const IntMatrix& witness,
                          const SizeCaps& caps = size_caps_from_env());

/// True iff sum c_v [v] is zero in K0(g). Throws GraphError for unknown names.
bool k0_vanishes(const Graph& g, const std::map<std::string, Integer>& combination);

struct VertexInclusionCheck {
  bool well_defined = false;  // relations of `from` hold in K0(to)
  bool surjective = false;    // classes of from's vertices generate K0(to)
  bool same_group = false;    // abstractly isomorphic groups
  /// A surjection between isomorphic finitely generated abelian groups is bijective.
  bool iso() const { return well_defined && surjective && same_group; }
};

/// Checks whether [v] -> [v] (matching names) induces an isomorphism
/// K0(from) -> K0(to). Exact lattice computations, no size cap.
VertexInclusionCheck natural_k0_map(const Graph& from, const Graph& to);

/// True iff every Smith diagonal entry of I - A^t is 1. Throws KTheoryError
/// for graphs with sinks (the presentation is not square).
bool has_trivial_k_theory(const Graph& g);

}  // namespace lpa
