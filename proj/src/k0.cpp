#include "lpa/k0.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "lpa/graph_ops.hpp"
#include "lpa/linalg.hpp"

namespace lpa {

Integer PointedAbelianGroup::order() const {
  Integer n = 1;
  for (const auto& d : invariant_factors) n *= d;
  return n;
}

K0Element PointedAbelianGroup::reduce(K0Element x) const {
  if (x.coords.size() != dimension()) {
    throw DimensionError("element has " + std::to_string(x.coords.size()) + " coordinates, group has " +
                         std::to_string(dimension()));
  }
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    Integer& c = x.coords[free_rank + i];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), invariant_factors[i].get_mpz_t());
  }
  return x;
}

K0Element PointedAbelianGroup::add(const K0Element& x, const K0Element& y) const {
  K0Element a = reduce(x);
  K0Element b = reduce(y);
  for (std::size_t i = 0; i < a.coords.size(); ++i) a.coords[i] += b.coords[i];
  return reduce(std::move(a));
}

K0Element PointedAbelianGroup::negate(const K0Element& x) const {
  K0Element a = reduce(x);
  for (auto& c : a.coords) c = -c;
  return reduce(std::move(a));
}

std::string render_group(const PointedAbelianGroup& p) {
  std::vector<std::string> parts;
  if (p.free_rank == 1) {
    parts.push_back("Z");
  } else if (p.free_rank > 1) {
    parts.push_back("Z^" + std::to_string(p.free_rank));
  }
  for (const auto& d : p.invariant_factors) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "Z^0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " (+) " : "") + parts[i];
  return out;
}

std::string render(const K0Element& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) out += (i ? "," : "") + x.coords[i].get_str();
  return out + ")";
}

std::string render(const PointedAbelianGroup& p) {
  return render_group(p) + " ; unit=" + render(p.reduce(p.unit_class));
}

K0Element K0Presentation::class_of(const std::string& vertex) const {
  auto it = std::find(vertex_names.begin(), vertex_names.end(), vertex);
  if (it == vertex_names.end()) throw GraphError("unknown vertex '" + vertex + "'");
  return vertex_classes[static_cast<std::size_t>(it - vertex_names.begin())];
}

K0Element K0Presentation::class_of(const std::vector<Integer>& multiplicities) const {
  return group.reduce(K0Element{coordinate_map.apply(multiplicities)});
}

namespace {

// Left-unimodular row reduction of a full-row-rank matrix, pivots taken from
// the last column backwards. The result depends only on the row lattice.
void canonicalize_rows_reverse(IntMatrix& f) {
  std::size_t p = 0;
  for (std::size_t c = f.cols(); c-- > 0 && p < f.rows();) {
    for (std::size_t i = p + 1; i < f.rows(); ++i) {
      while (f(i, c) != 0) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), f(p, c).get_mpz_t(), f(i, c).get_mpz_t());
        f.add_row_multiple(p, i, -q);
        f.swap_rows(p, i);
      }
    }
    if (f(p, c) == 0) continue;
    if (f(p, c) < 0) f.negate_row(p);
    for (std::size_t i = 0; i < p; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), f(i, c).get_mpz_t(), f(p, c).get_mpz_t());
      f.add_row_multiple(i, p, -q);
    }
    ++p;
  }
}

}  // namespace

K0Presentation k0_presentation(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> regular;
  for (VertexId v = 0; v < n; ++v)
    if (!g.is_sink(v)) regular.push_back(v);

  IntMatrix rel(n, regular.size());
  for (std::size_t k = 0; k < regular.size(); ++k) {
    VertexId v = regular[k];
    rel(v, k) += 1;
    for (EdgeId e : g.out_edges(v)) rel(g.range(e), k) -= 1;
  }

  auto snf = smith_normal_form(rel);
  const auto diag = snf.diagonal();
  const std::size_t rk = snf.rank();

  PointedAbelianGroup group;
  group.free_rank = n - rk;
  std::vector<std::size_t> torsion_rows;
  for (std::size_t i = 0; i < rk; ++i) {
    if (diag[i] != 1) {
      group.invariant_factors.push_back(diag[i]);
      torsion_rows.push_back(i);
    }
  }

  IntMatrix free_rows(group.free_rank, n);
  for (std::size_t i = 0; i < group.free_rank; ++i)
    for (std::size_t j = 0; j < n; ++j) free_rows(i, j) = snf.u(rk + i, j);
  canonicalize_rows_reverse(free_rows);

  IntMatrix coord(group.dimension(), n);
  for (std::size_t i = 0; i < group.free_rank; ++i)
    for (std::size_t j = 0; j < n; ++j) coord(i, j) = free_rows(i, j);
  for (std::size_t k = 0; k < torsion_rows.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) coord(group.free_rank + k, j) = snf.u(torsion_rows[k], j);

  K0Presentation pres{group, g.vertices(), {}, std::move(rel), std::move(coord)};
  for (VertexId v = 0; v < n; ++v) {
    std::vector<Integer> x(n);
    x[v] = 1;
    pres.vertex_classes.push_back(pres.class_of(x));
  }
  pres.group.unit_class = pres.class_of(std::vector<Integer>(n, Integer(1)));
  return pres;
}

bool k0_element_equal(const PointedAbelianGroup& p, const K0Element& x, const K0Element& y) {
  return p.reduce(x) == p.reduce(y);
}

std::string to_string(PointedIsoVerdict::Kind k) {
  switch (k) {
    case PointedIsoVerdict::Kind::Yes:
      return "yes";
    case PointedIsoVerdict::Kind::No:
      return "no";
    case PointedIsoVerdict::Kind::Undecided:
      return "undecided";
  }
  return "?";
}

namespace {

Integer content(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

// Unimodular M with M f = content(f) * e_1; f must be nonzero.
IntMatrix primitive_alignment(const std::vector<Integer>& f) {
  IntMatrix col(f.size(), 1);
  for (std::size_t i = 0; i < f.size(); ++i) col(i, 0) = f[i];
  auto snf = smith_normal_form(col);
  IntMatrix m = snf.u;
  if (snf.v(0, 0) < 0) {
    for (std::size_t i = 0; i < m.rows(); ++i) m.negate_row(i);
  }
  return m;
}

// Row vector lambda with lambda . f0 = 1 for primitive f0.
std::vector<Integer> bezout_row(const std::vector<Integer>& f0) {
  std::vector<Integer> lambda(f0.size());
  Integer acc = 0;
  for (std::size_t j = 0; j < f0.size(); ++j) {
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), acc.get_mpz_t(), f0[j].get_mpz_t());
    for (auto& l : lambda) l *= s;
    lambda[j] += t;
    acc = g;
  }
  if (acc < 0) {
    for (auto& l : lambda) l = -l;
  }
  return lambda;
}

// Finite abelian group Z/d1 (+) ... (+) Z/dt with small machine-word factors.
struct Torsion {
  std::vector<long> d;

  std::size_t size() const {
    std::size_t n = 1;
    for (long x : d) n *= static_cast<std::size_t>(x);
    return n;
  }
  std::size_t encode(const std::vector<long>& x) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < d.size(); ++i) k = k * static_cast<std::size_t>(d[i]) + static_cast<std::size_t>(x[i]);
    return k;
  }
  std::vector<long> decode(std::size_t k) const {
    std::vector<long> x(d.size());
    for (std::size_t i = d.size(); i-- > 0;) {
      x[i] = static_cast<long>(k % static_cast<std::size_t>(d[i]));
      k /= static_cast<std::size_t>(d[i]);
    }
    return x;
  }
  long mod(long a, std::size_t i) const {
    long r = a % d[i];
    return r < 0 ? r + d[i] : r;
  }
};

using SmallMatrix = std::vector<std::vector<long>>;

std::vector<long> apply(const Torsion& t, const SmallMatrix& m, const std::vector<long>& x) {
  std::vector<long> y(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc = t.mod(acc + t.mod(m[i][j], i) * x[j] % t.d[i], i);
    y[i] = acc;
  }
  return y;
}

SmallMatrix compose(const Torsion& t, const SmallMatrix& a, const SmallMatrix& b) {
  const std::size_t n = a.size();
  SmallMatrix c(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc = t.mod(acc + t.mod(a[i][k], i) * t.mod(b[k][j], i), i);
      c[i][j] = acc;
    }
  return c;
}

SmallMatrix small_identity(std::size_t n) {
  SmallMatrix m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Generators of the unit group mod d, chosen greedily.
std::vector<long> unit_group_generators(long d) {
  std::vector<long> gens;
  if (d <= 2) return gens;
  std::vector<bool> in_subgroup(static_cast<std::size_t>(d), false);
  in_subgroup[1] = true;
  std::vector<long> members{1};
  for (long k = 2; k < d; ++k) {
    if (std::gcd(k, d) != 1 || in_subgroup[static_cast<std::size_t>(k)]) continue;
    gens.push_back(k);
    // Close the subgroup under multiplication by k.
    std::deque<long> queue(members.begin(), members.end());
    while (!queue.empty()) {
      long x = queue.front();
      queue.pop_front();
      for (long g : gens) {
        long y = x * g % d;
        if (!in_subgroup[static_cast<std::size_t>(y)]) {
          in_subgroup[static_cast<std::size_t>(y)] = true;
          members.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  return gens;
}

// Elementary automorphisms: transvections x_j -> x_j + m x_i with the least m
// keeping the order of the image dividing d_j, plus diagonal unit scalings.
std::vector<SmallMatrix> automorphism_generators(const Torsion& t) {
  const std::size_t n = t.d.size();
  std::vector<SmallMatrix> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      SmallMatrix m = small_identity(n);
      m[i][j] = t.mod(t.d[i] / std::gcd(t.d[i], t.d[j]), i);
      gens.push_back(std::move(m));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (long k : unit_group_generators(t.d[i])) {
      SmallMatrix m = small_identity(n);
      m[i][i] = k;
      gens.push_back(std::move(m));
    }
  return gens;
}

struct Orbit {
  std::vector<std::vector<long>> elements;
  std::vector<SmallMatrix> maps;  // maps[k] sends the start to elements[k]
};

Orbit automorphism_orbit(const Torsion& t, const std::vector<long>& start) {
  const auto gens = automorphism_generators(t);
  Orbit orbit;
  std::unordered_map<std::size_t, std::size_t> seen;
  orbit.elements.push_back(start);
  orbit.maps.push_back(small_identity(t.d.size()));
  seen.emplace(t.encode(start), 0);
  for (std::size_t k = 0; k < orbit.elements.size(); ++k) {
    for (const auto& g : gens) {
      auto y = apply(t, g, orbit.elements[k]);
      if (seen.emplace(t.encode(y), orbit.elements.size()).second) {
        orbit.elements.push_back(y);
        orbit.maps.push_back(compose(t, g, orbit.maps[k]));
      }
    }
  }
  return orbit;
}

Torsion small_torsion(const PointedAbelianGroup& p) {
  Torsion t;
  for (const auto& d : p.invariant_factors) t.d.push_back(d.get_si());
  return t;
}

bool torsion_within(const PointedAbelianGroup& p, std::size_t cap) {
  Integer order = p.order();
  return order <= Integer(static_cast<unsigned long>(cap)) && order.fits_slong_p();
}

std::vector<long> torsion_part(const PointedAbelianGroup& p, const K0Element& x) {
  auto r = p.reduce(x);
  std::vector<long> out;
  for (std::size_t i = 0; i < p.invariant_factors.size(); ++i) out.push_back(r.coords[p.free_rank + i].get_si());
  return out;
}

std::vector<Integer> free_part(const PointedAbelianGroup& p, const K0Element& x) {
  return {x.coords.begin(), x.coords.begin() + static_cast<long>(p.free_rank)};
}

// Free block mapping f_p to f_q; both must have the same content.
IntMatrix free_block(const std::vector<Integer>& fp, const std::vector<Integer>& fq) {
  if (content(fp) == 0) return IntMatrix::identity(fp.size());
  return inverse_unimodular(primitive_alignment(fq)) * primitive_alignment(fp);
}

}  // namespace

PointedIsoVerdict pointed_iso_exists(const PointedAbelianGroup& p, const PointedAbelianGroup& q,
                                     const SizeCaps& caps) {
  using Kind = PointedIsoVerdict::Kind;
  if (p.free_rank != q.free_rank) {
    return {Kind::No, std::nullopt,
            "free ranks differ (" + std::to_string(p.free_rank) + " vs " + std::to_string(q.free_rank) + ")"};
  }
  if (p.invariant_factors != q.invariant_factors) {
    return {Kind::No, std::nullopt, "invariant factors differ (" + render_group(p) + " vs " + render_group(q) + ")"};
  }
  const std::size_t r = p.free_rank;
  const std::size_t t = p.invariant_factors.size();
  const std::size_t dim = r + t;
  if (dim == 0) return {Kind::Yes, IntMatrix(0, 0), "trivial groups"};

  const auto fp = free_part(p, p.unit_class);
  const auto fq = free_part(q, q.unit_class);
  const Integer gp = content(fp);
  const Integer gq = content(fq);
  if (gp != gq) {
    return {Kind::No, std::nullopt,
            "gcd of free unit coordinates differs (" + gp.get_str() + " vs " + gq.get_str() + ")"};
  }

  IntMatrix witness = IntMatrix::identity(dim);
  if (r > 0) {
    IntMatrix a = free_block(fp, fq);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) witness(i, j) = a(i, j);
  }
  if (t == 0) return {Kind::Yes, witness, "free parts with equal unit content " + gp.get_str()};

  if (!torsion_within(p, caps.group_order)) {
    if (r == 0) {
      throw SizeCapError("finite group of order " + p.order().get_str() + " exceeds search cap " +
                         std::to_string(caps.group_order));
    }
    return {Kind::Undecided, std::nullopt,
            "torsion subgroup of order " + p.order().get_str() + " exceeds search cap " +
                std::to_string(caps.group_order)};
  }

  const Torsion tor = small_torsion(p);
  const auto tp = torsion_part(p, p.unit_class);
  const auto tq = torsion_part(q, q.unit_class);
  // With f_p = g f0 the torsion block may absorb anything in g*T.
  const long g = gp.fits_slong_p() ? gp.get_si() : 0;
  auto in_gT = [&](const std::vector<long>& w) {
    for (std::size_t i = 0; i < t; ++i) {
      long h = std::gcd(g, tor.d[i]);
      if (w[i] % h != 0) return false;
    }
    return true;
  };

  const Orbit orbit = automorphism_orbit(tor, tp);
  for (std::size_t k = 0; k < orbit.elements.size(); ++k) {
    std::vector<long> diff(t);
    for (std::size_t i = 0; i < t; ++i) diff[i] = tor.mod(tq[i] - orbit.elements[k][i], i);
    if (!in_gT(diff)) continue;

    const SmallMatrix& c = orbit.maps[k];
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) witness(r + i, r + j) = c[i][j];
    if (g != 0) {
      // Solve g*s = diff in T, then B = s * lambda with lambda . (f_p / g) = 1.
      std::vector<Integer> f0;
      for (const auto& x : fp) f0.push_back(x / gp);
      const auto lambda = bezout_row(f0);
      for (std::size_t i = 0; i < t; ++i) {
        long h = std::gcd(g, tor.d[i]);
        long modulus = tor.d[i] / h;
        long s = 0;
        if (modulus > 1) {
          Integer inv;
          Integer gh = (g / h) % modulus;
          if (gh < 0) gh += modulus;
          mpz_invert(inv.get_mpz_t(), gh.get_mpz_t(), Integer(modulus).get_mpz_t());
          s = ((diff[i] / h) % modulus) * inv.get_si() % modulus;
        }
        for (std::size_t j = 0; j < r; ++j) witness(r + i, j) = Integer(s) * lambda[j];
      }
    }
    return {Kind::Yes, witness,
            r == 0 ? "unit classes share an automorphism orbit" : "unit classes match modulo the free part"};
  }
  return {Kind::No, std::nullopt,
          r == 0 ? "unit classes lie in different automorphism orbits"
                 : "torsion components of the units are not related by any automorphism"};
}

bool validate_pointed_iso(const PointedAbelianGroup& p, const PointedAbelianGroup& q, const IntMatrix& w,
                          const SizeCaps& caps) {
  if (!p.same_group(q)) return false;
  const std::size_t r = p.free_rank;
  const std::size_t t = p.invariant_factors.size();
  const std::size_t dim = r + t;
  if (w.rows() != dim || w.cols() != dim) return false;

  IntMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a(i, j) = w(i, j);
  if (r > 0 && abs(determinant(a)) != 1) return false;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = r; j < dim; ++j)
      if (w(i, j) != 0) return false;

  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      Integer x = w(r + i, r + j) * p.invariant_factors[j];
      if (!mpz_divisible_p(x.get_mpz_t(), p.invariant_factors[i].get_mpz_t())) return false;
    }

  if (t > 0) {
    if (!torsion_within(p, caps.group_order)) {
      throw SizeCapError("cannot validate witness: torsion order " + p.order().get_str() + " exceeds cap");
    }
    const Torsion tor = small_torsion(p);
    SmallMatrix c(t, std::vector<long>(t));
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) {
        Integer x;
        mpz_fdiv_r(x.get_mpz_t(), w(r + i, r + j).get_mpz_t(), p.invariant_factors[i].get_mpz_t());
        c[i][j] = x.get_si();
      }
    const std::size_t order = tor.size();
    for (std::size_t k = 1; k < order; ++k) {
      auto y = apply(tor, c, tor.decode(k));
      if (tor.encode(y) == 0) return false;
    }
  }

  K0Element image{w.apply(p.reduce(p.unit_class).coords)};
  return k0_element_equal(q, image, q.unit_class);
}

bool has_trivial_k_theory(const Graph& g) {
  if (g.has_sinks()) {
    throw KTheoryError("graph has sinks: I - A^t presentation is not square; use k0_presentation");
  }
  auto snf = smith_normal_form(identity_minus_transpose(adjacency_matrix(g)));
  bool all_one = true;
  for (const auto& d : snf.diagonal())
    if (d != 1) all_one = false;
  if (all_one != k0_presentation(g).group.is_trivial()) {
    throw std::logic_error("Smith form of I - A^t disagrees with the K0 presentation");
  }
  return all_one;
}

namespace {

std::vector<Integer> vertex_vector(const Graph& g, const std::map<std::string, Integer>& combination) {
  std::vector<Integer> x(g.vertex_count());
  for (const auto& [name, c] : combination) x[g.vertex_index(name)] += c;
  return x;
}

}  // namespace

bool k0_vanishes(const Graph& g, const std::map<std::string, Integer>& combination) {
  return in_column_lattice(k0_presentation(g).relations, vertex_vector(g, combination));
}

VertexInclusionCheck natural_k0_map(const Graph& from, const Graph& to) {
  auto target = k0_presentation(to);
  const IntMatrix& rel = target.relations;
  VertexInclusionCheck out;
  out.same_group = k0_presentation(from).group.same_group(target.group);

  out.well_defined = true;
  for (VertexId v = 0; v < from.vertex_count() && out.well_defined; ++v) {
    if (from.is_sink(v)) continue;
    std::map<std::string, Integer> r{{from.vertex_name(v), Integer(1)}};
    for (EdgeId e : from.out_edges(v)) r[from.vertex_name(from.range(e))] -= 1;
    out.well_defined = in_column_lattice(rel, vertex_vector(to, r));
  }

  IntMatrix gens(to.vertex_count(), rel.cols() + from.vertex_count());
  for (std::size_t i = 0; i < rel.rows(); ++i)
    for (std::size_t j = 0; j < rel.cols(); ++j) gens(i, j) = rel(i, j);
  for (VertexId v = 0; v < from.vertex_count(); ++v) gens(to.vertex_index(from.vertex_name(v)), rel.cols() + v) = 1;
  out.surjective = columns_generate(gens);
  return out;
}

}  // namespace lpa
