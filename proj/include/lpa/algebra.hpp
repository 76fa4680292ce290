#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/matrix.hpp"

namespace lpa {

/// Unknown identifiers, mismatched contexts, invalid V.
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The relative Cohn path algebra C(E, V) over the rationals. V must consist
/// of regular vertices; with V = all regular vertices this is L(E).
///
/// Cheap to copy: copies share one immutable graph.
class AlgebraContext {
 public:
  AlgebraContext(Graph g, std::set<std::string> complete_at);
  static AlgebraContext leavitt(Graph g);

  const Graph& graph() const { return impl_->graph; }
  const std::set<std::string>& complete_at() const { return impl_->complete_at; }
  bool in_V(VertexId v) const { return impl_->in_v[v]; }
  /// Lexicographically least edge identifier out of v, for v in V.
  std::optional<EdgeId> special_edge(VertexId v) const;
  /// e is the special edge of its source and that source is in V.
  bool is_special(EdgeId e) const { return impl_->special[e]; }

  /// "L(E)" or "C(E, {v2})" style description (graph given by vertex list).
  std::string describe() const;

  friend bool operator==(const AlgebraContext& a, const AlgebraContext& b);

 private:
  struct Impl {
    Graph graph;
    std::set<std::string> complete_at;
    std::vector<bool> in_v;
    std::vector<std::optional<EdgeId>> special_of;
    std::vector<bool> special;
  };
  std::shared_ptr<const Impl> impl_;
};

/// The monomial alpha beta^*. r(alpha) = r(beta) = base; when both paths are
/// empty the monomial is the vertex base.
struct PathMonomial {
  std::vector<EdgeId> alpha;
  std::vector<EdgeId> beta;
  VertexId base = 0;

  std::size_t length() const { return alpha.size() + beta.size(); }
  bool is_vertex() const { return alpha.empty() && beta.empty(); }

  /// Canonical order: (|alpha|+|beta|, alpha, beta, base) with edges compared
  /// by declaration index.
  friend bool operator<(const PathMonomial& a, const PathMonomial& b);
  friend bool operator==(const PathMonomial&, const PathMonomial&) = default;
};

/// Normal form: not (alpha, beta both nonempty and ending in the same special edge).
bool is_normal(const AlgebraContext& ctx, const PathMonomial& m);

/// "e1 e3*", "v2"; the ghosts of beta appear in reverse order.
std::string render(const AlgebraContext& ctx, const PathMonomial& m);

/// Finite rational combination of normal-form monomials. Elements exceeding
/// 10^5 monomials raise ResourceError.
class AlgebraElement {
 public:
  using Terms = std::map<PathMonomial, Rational>;

  explicit AlgebraElement(AlgebraContext ctx) : ctx_(std::move(ctx)) {}

  const AlgebraContext& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of a normal-form monomial (zero when absent).
  Rational coefficient(const PathMonomial& m) const;

  /// Adds c * m, normalizing m first.
  void add_term(const PathMonomial& m, const Rational& c);

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(const Rational& c);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }
  friend AlgebraElement operator*(const Rational& c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

  /// Coefficients and monomials agree; throws AlgebraError across contexts.
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

  /// "v2 - e4 e4*", "2 e1", "-1/2 v1", "0".
  std::string to_string() const;

 private:
  void check_size() const;
  void require_same_context(const AlgebraElement& other) const;

  AlgebraContext ctx_;
  Terms terms_;
};

AlgebraElement star(const AlgebraElement& x);

AlgebraElement zero(const AlgebraContext& ctx);
AlgebraElement vertex(const AlgebraContext& ctx, const std::string& v);
AlgebraElement edge(const AlgebraContext& ctx, const std::string& e);
AlgebraElement ghost(const AlgebraContext& ctx, const std::string& e);
/// Sum of all vertices.
AlgebraElement unit(const AlgebraContext& ctx);
AlgebraElement scalar(const AlgebraContext& ctx, const Rational& c);

/// Product of two monomials, fully normalized.
AlgebraElement multiply(const AlgebraContext& ctx, const PathMonomial& a, const PathMonomial& b);

// ---- word rewriting --------------------------------------------------------

struct Letter {
  enum class Kind { Vertex, Edge, Ghost };
  Kind kind;
  std::size_t index;  // VertexId or EdgeId

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A product of generators; the empty word is the unit.
using Word = std::vector<Letter>;

struct WeightedWord {
  Rational coefficient;
  Word word;
};

enum class RewriteStrategy { Leftmost, Rightmost };

/// Rewrites each word to irreducible form with the relations as rules, always
/// firing the leftmost (or rightmost) reducible pair. Ill-composed words go
/// to 0.
AlgebraElement normalize(const AlgebraContext& ctx, const std::vector<WeightedWord>& words,
                         RewriteStrategy strategy = RewriteStrategy::Leftmost);

/// The word of a monomial: alpha's edges followed by beta's ghosts reversed.
Word to_word(const PathMonomial& m);

std::string render(const AlgebraContext& ctx, const Word& w);

}  // namespace lpa
