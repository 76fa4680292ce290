#include <gtest/gtest.h>

#include <random>

#include "lpa/corpus.hpp"
#include "lpa/graph.hpp"
#include "lpa/graph_ops.hpp"
#include "lpa/invariants.hpp"
#include "lpa/k0.hpp"
#include "lpa/linalg.hpp"

using namespace lpa;

namespace {

PointedAbelianGroup group(std::size_t free_rank, std::vector<long> factors, std::vector<long> unit) {
  PointedAbelianGroup p;
  p.free_rank = free_rank;
  for (long d : factors) p.invariant_factors.push_back(d);
  for (long c : unit) p.unit_class.coords.push_back(c);
  return p;
}

std::vector<K0Element> all_elements(const PointedAbelianGroup& p) {
  std::vector<K0Element> out{p.zero()};
  for (std::size_t i = 0; i < p.invariant_factors.size(); ++i) {
    std::vector<K0Element> next;
    for (const auto& x : out)
      for (long c = 0; c < p.invariant_factors[i].get_si(); ++c) {
        auto y = x;
        y.coords[i] = c;
        next.push_back(y);
      }
    out = std::move(next);
  }
  return out;
}

K0Element image(const PointedAbelianGroup& q, const std::vector<K0Element>& gens, const K0Element& x) {
  K0Element y = q.zero();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (long k = 0; k < x.coords[i].get_si(); ++k) y = q.add(y, gens[i]);
  return q.reduce(y);
}

// Enumerates every homomorphism between finite groups and looks for a
// bijective one carrying unit to unit.
bool brute_force_pointed_iso(const PointedAbelianGroup& p, const PointedAbelianGroup& q) {
  if (p.order() != q.order()) return false;
  auto ep = all_elements(p);
  auto eq = all_elements(q);
  std::vector<std::vector<K0Element>> candidates(p.invariant_factors.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (const auto& y : eq) {
      K0Element m = q.zero();
      for (long k = 0; k < p.invariant_factors[i].get_si(); ++k) m = q.add(m, y);
      if (m == q.zero()) candidates[i].push_back(y);
    }
  }
  std::vector<std::size_t> pick(candidates.size(), 0);
  while (true) {
    std::vector<K0Element> gens;
    for (std::size_t i = 0; i < pick.size(); ++i) gens.push_back(candidates[i][pick[i]]);
    if (image(q, gens, p.reduce(p.unit_class)) == q.reduce(q.unit_class)) {
      std::set<std::vector<Integer>> seen;
      for (const auto& x : ep) seen.insert(image(q, gens, x).coords);
      if (seen.size() == ep.size()) return true;
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == candidates[i].size()) pick[i++] = 0;
    if (i == pick.size()) return false;
  }
}

}  // namespace

TEST(K0, Examples) {
  auto ess = k0_presentation(builtin("E_star_star"));
  EXPECT_TRUE(ess.group.is_trivial());
  EXPECT_EQ(render(ess.group), "Z^0 ; unit=()");

  auto fss = k0_presentation(builtin("F_star_star"));
  EXPECT_EQ(render_group(fss.group), "Z");
  EXPECT_EQ(fss.class_of("w3"), fss.group.zero());
  EXPECT_EQ(fss.class_of("w4"), fss.group.zero());
  EXPECT_EQ(fss.group.unit_class, fss.group.negate(fss.class_of("w1'")));

  auto r3 = k0_presentation(builtin("R3"));
  EXPECT_EQ(render(r3.group), "Z/2 ; unit=(1)");
  EXPECT_EQ(r3.class_of("u").coords, std::vector<Integer>{1});
}

TEST(K0, ElementEquality) {
  auto fs = k0_presentation(builtin("F_star"));
  EXPECT_TRUE(k0_element_equal(fs.group, fs.class_of("v2"), fs.group.negate(fs.class_of("v1'"))));
  auto fss = k0_presentation(builtin("F_star_star"));
  EXPECT_TRUE(k0_element_equal(fss.group, fss.class_of("w4"), fss.group.zero()));
  auto x = group(0, {6}, {5});
  EXPECT_TRUE(k0_element_equal(x, K0Element{{11}}, K0Element{{5}}));
  EXPECT_FALSE(k0_element_equal(x, K0Element{{1}}, K0Element{{5}}));
}

TEST(K0, UnitIsSumOfVertexClasses) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (const auto& g : random_spi_corpus(seed, 10, 5)) {
      auto pres = k0_presentation(g);
      K0Element sum = pres.group.zero();
      for (const auto& c : pres.vertex_classes) sum = pres.group.add(sum, c);
      EXPECT_EQ(pres.group.reduce(sum), pres.group.reduce(pres.group.unit_class));
    }
  }
}

TEST(K0, RelationsVanish) {
  for (const auto& g : random_spi_corpus(17, 20, 5)) {
    auto pres = k0_presentation(g);
    for (std::size_t j = 0; j < pres.relations.cols(); ++j) {
      std::vector<Integer> col(pres.relations.rows());
      for (std::size_t i = 0; i < col.size(); ++i) col[i] = pres.relations(i, j);
      EXPECT_EQ(pres.class_of(col), pres.group.zero());
    }
  }
}

TEST(PointedIso, Examples) {
  auto yes = pointed_iso_exists(group(1, {}, {1}), group(1, {}, {-1}));
  EXPECT_EQ(yes.kind, PointedIsoVerdict::Kind::Yes);
  ASSERT_TRUE(yes.witness.has_value());
  EXPECT_TRUE(validate_pointed_iso(group(1, {}, {1}), group(1, {}, {-1}), *yes.witness));
  EXPECT_EQ(pointed_iso_exists(group(1, {}, {2}), group(1, {}, {1})).kind, PointedIsoVerdict::Kind::No);
  EXPECT_EQ(pointed_iso_exists(group(0, {}, {}), group(0, {}, {})).kind, PointedIsoVerdict::Kind::Yes);
  EXPECT_EQ(pointed_iso_exists(group(0, {2}, {1}), group(0, {4}, {1})).kind, PointedIsoVerdict::Kind::No);
}

TEST(PointedIso, AgreesWithBruteForceOnFiniteGroups) {
  const std::vector<std::vector<long>> shapes{{2}, {3}, {4}, {6}, {8}, {2, 2}, {2, 4}, {3, 3}, {2, 6}, {12}};
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1);
  for (int trial = 0; trial < 120; ++trial) {
    auto a = shapes[pick(rng)];
    auto b = trial % 3 == 0 ? shapes[pick(rng)] : a;
    auto random_unit = [&](const std::vector<long>& f) {
      std::vector<long> u;
      for (long d : f) u.push_back(std::uniform_int_distribution<long>(0, d - 1)(rng));
      return u;
    };
    auto p = group(0, a, random_unit(a));
    auto q = group(0, b, random_unit(b));
    auto verdict = pointed_iso_exists(p, q);
    ASSERT_NE(verdict.kind, PointedIsoVerdict::Kind::Undecided);
    bool expected = brute_force_pointed_iso(p, q);
    EXPECT_EQ(verdict.kind == PointedIsoVerdict::Kind::Yes, expected) << render(p) << " vs " << render(q);
    if (verdict.witness) EXPECT_TRUE(validate_pointed_iso(p, q, *verdict.witness));
  }
}

TEST(PointedIso, MixedFreeAndTorsion) {
  // Z (+) Z/2 with unit (1,0) vs (1,1): the automorphism (a,b) -> (a, a+b) relates them.
  EXPECT_EQ(pointed_iso_exists(group(1, {2}, {1, 0}), group(1, {2}, {1, 1})).kind, PointedIsoVerdict::Kind::Yes);
  // (2,0) vs (2,1): content of the free part is 2 in both, but (2,1) is not divisible by 2.
  EXPECT_EQ(pointed_iso_exists(group(1, {2}, {2, 0}), group(1, {2}, {2, 1})).kind, PointedIsoVerdict::Kind::No);
}

TEST(TrivialKTheory, Examples) {
  EXPECT_TRUE(has_trivial_k_theory(builtin("E_star")));
  EXPECT_FALSE(has_trivial_k_theory(builtin("R3")));
  EXPECT_TRUE(has_trivial_k_theory(builtin("E_star_star")));
  EXPECT_THROW(has_trivial_k_theory(builtin("F_star")), KTheoryError);
}

TEST(Invariants, Summaries) {
  EXPECT_EQ(summary_line(compute_invariants(builtin("E_star"))), "Z^0 ; unit=() ; det=-1 ; SPI=yes");
  EXPECT_EQ(summary_line(compute_invariants(builtin("E_star_star"))), "Z^0 ; unit=() ; det=1 ; SPI=yes");
  EXPECT_EQ(summary_line(compute_invariants(builtin("R3"))), "Z/2 ; unit=(1) ; det=-2 ; SPI=yes");
  auto fs = compute_invariants(builtin("F_star"));
  EXPECT_FALSE(fs.determinant.has_value());
  EXPECT_EQ(fs.presentation_shape, "3x2");
}

TEST(Invariants, DeterminantMatchesGroupOrder) {
  // |det(I - A^t)| is the order of K0 when finite, and 0 exactly when K0 is infinite.
  for (const auto& g : random_spi_corpus(3, 40, 6)) {
    auto inv = compute_invariants(g);
    if (inv.k0.is_finite()) {
      EXPECT_EQ(abs(*inv.determinant), inv.k0.order());
    } else {
      EXPECT_EQ(*inv.determinant, 0);
    }
  }
}

TEST(K0, MatchesCokernelOfFullMatrix) {
  for (const auto& g : random_spi_corpus(23, 40, 6)) {
    auto s = smith_normal_form(identity_minus_transpose(adjacency_matrix(g)));
    std::size_t free_rank = 0;
    std::vector<Integer> factors;
    for (const auto& d : s.diagonal()) {
      if (d == 0) ++free_rank;
      else if (d != 1) factors.push_back(d);
    }
    auto p = k0_presentation(g).group;
    EXPECT_EQ(p.free_rank, free_rank);
    EXPECT_EQ(p.invariant_factors, factors);
  }
}

TEST(PointedIso, SymmetricAndReflexive) {
  auto corpus = random_spi_corpus(29, 14, 5);
  for (const auto& g : corpus) {
    auto p = k0_presentation(g).group;
    EXPECT_EQ(pointed_iso_exists(p, p).kind, PointedIsoVerdict::Kind::Yes) << render(p);
    for (const auto& h : corpus) {
      auto q = k0_presentation(h).group;
      EXPECT_EQ(pointed_iso_exists(p, q).kind, pointed_iso_exists(q, p).kind) << render(p) << " vs " << render(q);
    }
  }
}
