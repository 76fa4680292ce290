#include "lpa/algebra.hpp"

#include <algorithm>

#include "lpa/limits.hpp"

namespace lpa {

namespace {

constexpr std::size_t kMaxMonomials = 100000;

}  // namespace

AlgebraContext::AlgebraContext(Graph g, std::set<std::string> complete_at) {
  auto impl = std::make_shared<Impl>();
  impl->in_v.assign(g.vertex_count(), false);
  impl->special_of.assign(g.vertex_count(), std::nullopt);
  impl->special.assign(g.edge_count(), false);
  for (const auto& name : complete_at) {
    auto v = g.find_vertex(name);
    if (!v) throw AlgebraError("V contains unknown vertex '" + name + "'");
    if (g.is_sink(*v)) throw AlgebraError("V contains the sink '" + name + "'; V must consist of regular vertices");
    impl->in_v[*v] = true;
    EdgeId best = g.out_edges(*v).front();
    for (EdgeId e : g.out_edges(*v))
      if (g.edge_name(e) < g.edge_name(best)) best = e;
    impl->special_of[*v] = best;
    impl->special[best] = true;
  }
  impl->graph = std::move(g);
  impl->complete_at = std::move(complete_at);
  impl_ = std::move(impl);
}

AlgebraContext AlgebraContext::leavitt(Graph g) {
  auto reg = regular_vertices(g);
  return AlgebraContext(std::move(g), std::move(reg));
}

std::optional<EdgeId> AlgebraContext::special_edge(VertexId v) const { return impl_->special_of.at(v); }

std::string AlgebraContext::describe() const {
  if (complete_at() == regular_vertices(graph())) return "L(E)";
  std::string out = "C(E, {";
  bool first = true;
  for (const auto& v : complete_at()) {
    if (!first) out += ", ";
    out += v;
    first = false;
  }
  return out + "})";
}

bool operator==(const AlgebraContext& a, const AlgebraContext& b) {
  return a.impl_ == b.impl_ || (a.graph() == b.graph() && a.complete_at() == b.complete_at());
}

bool operator<(const PathMonomial& a, const PathMonomial& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  if (a.beta != b.beta) return a.beta < b.beta;
  return a.base < b.base;
}

bool is_normal(const AlgebraContext& ctx, const PathMonomial& m) {
  if (m.alpha.empty() || m.beta.empty()) return true;
  return !(m.alpha.back() == m.beta.back() && ctx.is_special(m.alpha.back()));
}

std::string render(const AlgebraContext& ctx, const PathMonomial& m) {
  const Graph& g = ctx.graph();
  if (m.is_vertex()) return g.vertex_name(m.base);
  std::string out;
  for (EdgeId e : m.alpha) {
    if (!out.empty()) out += ' ';
    out += g.edge_name(e);
  }
  for (auto it = m.beta.rbegin(); it != m.beta.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += g.edge_name(*it) + "*";
  }
  return out;
}

namespace {

void accumulate(AlgebraElement::Terms& terms, const PathMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

// Adds c * alpha beta^*, rewriting gamma gamma^* -> v - sum_{f != gamma} f f^*
// while both paths end in the same special edge gamma.
void accumulate_reduced(const AlgebraContext& ctx, AlgebraElement::Terms& terms, PathMonomial m, const Rational& c) {
  const Graph& g = ctx.graph();
  while (!is_normal(ctx, m)) {
    EdgeId gamma = m.alpha.back();
    VertexId v = g.source(gamma);
    m.alpha.pop_back();
    m.beta.pop_back();
    for (EdgeId f : g.out_edges(v)) {
      if (f == gamma) continue;
      PathMonomial t{m.alpha, m.beta, g.range(f)};
      t.alpha.push_back(f);
      t.beta.push_back(f);
      accumulate(terms, t, -c);
    }
    m.base = v;
  }
  accumulate(terms, m, c);
}

VertexId left_vertex(const Graph& g, const PathMonomial& m) {
  return m.alpha.empty() ? m.base : g.source(m.alpha.front());
}

VertexId right_vertex(const Graph& g, const PathMonomial& m) {
  return m.beta.empty() ? m.base : g.source(m.beta.front());
}

// (a.alpha a.beta^*)(b.alpha b.beta^*) before reduction; nullopt for zero.
std::optional<PathMonomial> concatenate(const Graph& g, const PathMonomial& a, const PathMonomial& b) {
  if (right_vertex(g, a) != left_vertex(g, b)) return std::nullopt;
  const auto& inner_left = a.beta;
  const auto& inner_right = b.alpha;
  std::size_t k = std::min(inner_left.size(), inner_right.size());
  if (!std::equal(inner_left.begin(), inner_left.begin() + k, inner_right.begin())) return std::nullopt;
  PathMonomial out;
  if (inner_right.size() >= inner_left.size()) {
    // beta^* beta gamma = gamma
    out.alpha = a.alpha;
    out.alpha.insert(out.alpha.end(), inner_right.begin() + k, inner_right.end());
    out.beta = b.beta;
    out.base = b.base;
  } else {
    // (alpha gamma)^* alpha = gamma^*
    out.alpha = a.alpha;
    out.beta = b.beta;
    out.beta.insert(out.beta.end(), inner_left.begin() + k, inner_left.end());
    out.base = a.base;
  }
  return out;
}

}  // namespace

Rational AlgebraElement::coefficient(const PathMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgebraElement::add_term(const PathMonomial& m, const Rational& c) {
  accumulate_reduced(ctx_, terms_, m, c);
  check_size();
}

void AlgebraElement::check_size() const {
  if (terms_.size() > kMaxMonomials) {
    throw ResourceError("algebra element exceeds " + std::to_string(kMaxMonomials) + " monomials");
  }
}

void AlgebraElement::require_same_context(const AlgebraElement& other) const {
  if (!(ctx_ == other.ctx_)) throw AlgebraError("elements belong to different algebras");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_context(other);
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, c);
  check_size();
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_context(other);
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, -c);
  check_size();
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

AlgebraElement multiply(const AlgebraContext& ctx, const PathMonomial& a, const PathMonomial& b) {
  AlgebraElement out(ctx);
  if (auto m = concatenate(ctx.graph(), a, b)) out.add_term(*m, Rational(1));
  return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  a.require_same_context(b);
  const Graph& g = a.ctx_.graph();
  AlgebraElement out(a.ctx_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (auto m = concatenate(g, ma, mb)) accumulate_reduced(a.ctx_, out.terms_, std::move(*m), ca * cb);
    }
    out.check_size();
  }
  return out;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  a.require_same_context(b);
  return a.terms_ == b.terms_;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono = render(ctx_, m);
    Rational mag = abs(c);
    if (first) {
      if (c == 1) {
        out = mono;
      } else if (c == -1) {
        out = "-" + mono;
      } else {
        out = c.get_str() + " " + mono;
      }
      first = false;
      continue;
    }
    out += c < 0 ? " - " : " + ";
    if (mag != 1) out += mag.get_str() + " ";
    out += mono;
  }
  return out;
}

AlgebraElement star(const AlgebraElement& x) {
  AlgebraElement out(x.context());
  for (const auto& [m, c] : x.terms()) out.add_term(PathMonomial{m.beta, m.alpha, m.base}, c);
  return out;
}

AlgebraElement zero(const AlgebraContext& ctx) { return AlgebraElement(ctx); }

AlgebraElement vertex(const AlgebraContext& ctx, const std::string& v) {
  auto idx = ctx.graph().find_vertex(v);
  if (!idx) throw AlgebraError("unknown vertex '" + v + "'");
  AlgebraElement out(ctx);
  out.add_term(PathMonomial{{}, {}, *idx}, Rational(1));
  return out;
}

AlgebraElement edge(const AlgebraContext& ctx, const std::string& e) {
  auto idx = ctx.graph().find_edge(e);
  if (!idx) throw AlgebraError("unknown edge '" + e + "'");
  AlgebraElement out(ctx);
  out.add_term(PathMonomial{{*idx}, {}, ctx.graph().range(*idx)}, Rational(1));
  return out;
}

AlgebraElement ghost(const AlgebraContext& ctx, const std::string& e) {
  auto idx = ctx.graph().find_edge(e);
  if (!idx) throw AlgebraError("unknown edge '" + e + "'");
  AlgebraElement out(ctx);
  out.add_term(PathMonomial{{}, {*idx}, ctx.graph().range(*idx)}, Rational(1));
  return out;
}

AlgebraElement unit(const AlgebraContext& ctx) { return scalar(ctx, Rational(1)); }

AlgebraElement scalar(const AlgebraContext& ctx, const Rational& c) {
  AlgebraElement out(ctx);
  for (VertexId v = 0; v < ctx.graph().vertex_count(); ++v) out.add_term(PathMonomial{{}, {}, v}, c);
  return out;
}

// ---- word rewriting --------------------------------------------------------

namespace {

using Kind = Letter::Kind;

Letter V(VertexId v) { return {Kind::Vertex, v}; }
Letter E(EdgeId e) { return {Kind::Edge, e}; }
Letter G(EdgeId e) { return {Kind::Ghost, e}; }

struct Rewrite {
  enum class Type { Irreducible, Zero, Replace, Expand } type = Type::Irreducible;
  Word replacement;  // for Replace
};

// The rule applying to the adjacent pair (x, y), if any.
Rewrite rule(const AlgebraContext& ctx, Letter x, Letter y) {
  const Graph& g = ctx.graph();
  auto keep = [](Letter l) { return Rewrite{Rewrite::Type::Replace, {l}}; };
  const Rewrite zero{Rewrite::Type::Zero, {}};
  switch (x.kind) {
    case Kind::Vertex:
      switch (y.kind) {
        case Kind::Vertex:
          return x.index == y.index ? keep(x) : zero;
        case Kind::Edge:
          return g.source(y.index) == x.index ? keep(y) : zero;
        case Kind::Ghost:
          return g.range(y.index) == x.index ? keep(y) : zero;
      }
      break;
    case Kind::Edge:
      switch (y.kind) {
        case Kind::Vertex:
          return g.range(x.index) == y.index ? keep(x) : zero;
        case Kind::Edge:
          return g.range(x.index) == g.source(y.index) ? Rewrite{} : zero;
        case Kind::Ghost:
          if (g.range(x.index) != g.range(y.index)) return zero;
          if (x.index == y.index && ctx.is_special(x.index)) return {Rewrite::Type::Expand, {}};
          return {};
      }
      break;
    case Kind::Ghost:
      switch (y.kind) {
        case Kind::Vertex:
          return g.source(x.index) == y.index ? keep(x) : zero;
        case Kind::Edge:
          return x.index == y.index ? keep(V(g.range(x.index))) : zero;
        case Kind::Ghost:
          return g.source(x.index) == g.range(y.index) ? Rewrite{} : zero;
      }
      break;
  }
  return {};
}

PathMonomial irreducible_to_monomial(const Graph& g, const Word& w) {
  if (w.size() == 1 && w[0].kind == Kind::Vertex) return PathMonomial{{}, {}, w[0].index};
  PathMonomial m;
  std::size_t i = 0;
  for (; i < w.size() && w[i].kind == Kind::Edge; ++i) m.alpha.push_back(w[i].index);
  for (; i < w.size(); ++i) m.beta.push_back(w[i].index);
  std::reverse(m.beta.begin(), m.beta.end());
  m.base = m.alpha.empty() ? g.range(m.beta.back()) : g.range(m.alpha.back());
  return m;
}

}  // namespace

AlgebraElement normalize(const AlgebraContext& ctx, const std::vector<WeightedWord>& words, RewriteStrategy strategy) {
  const Graph& g = ctx.graph();
  AlgebraElement out(ctx);
  std::vector<WeightedWord> pending(words.rbegin(), words.rend());
  while (!pending.empty()) {
    WeightedWord item = std::move(pending.back());
    pending.pop_back();
    if (item.coefficient == 0) continue;
    if (item.word.empty()) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) pending.push_back({item.coefficient, {V(v)}});
      continue;
    }
    const std::size_t n = item.word.size();
    std::optional<std::size_t> pos;
    Rewrite rw;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      std::size_t i = strategy == RewriteStrategy::Leftmost ? k : n - 2 - k;
      rw = rule(ctx, item.word[i], item.word[i + 1]);
      if (rw.type != Rewrite::Type::Irreducible) {
        pos = i;
        break;
      }
    }
    if (!pos) {
      out.add_term(irreducible_to_monomial(g, item.word), item.coefficient);
      continue;
    }
    const Word& w = item.word;
    auto splice = [&](const Word& middle) {
      Word next(w.begin(), w.begin() + *pos);
      next.insert(next.end(), middle.begin(), middle.end());
      next.insert(next.end(), w.begin() + *pos + 2, w.end());
      return next;
    };
    switch (rw.type) {
      case Rewrite::Type::Zero:
        break;
      case Rewrite::Type::Replace:
        pending.push_back({item.coefficient, splice(rw.replacement)});
        break;
      case Rewrite::Type::Expand: {
        EdgeId gamma = w[*pos].index;
        VertexId v = g.source(gamma);
        pending.push_back({item.coefficient, splice({V(v)})});
        for (EdgeId f : g.out_edges(v)) {
          if (f != gamma) pending.push_back({-item.coefficient, splice({E(f), G(f)})});
        }
        break;
      }
      case Rewrite::Type::Irreducible:
        break;
    }
  }
  return out;
}

Word to_word(const PathMonomial& m) {
  if (m.is_vertex()) return {V(m.base)};
  Word w;
  for (EdgeId e : m.alpha) w.push_back(E(e));
  for (auto it = m.beta.rbegin(); it != m.beta.rend(); ++it) w.push_back(G(*it));
  return w;
}

std::string render(const AlgebraContext& ctx, const Word& w) {
  if (w.empty()) return "1";
  const Graph& g = ctx.graph();
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    switch (l.kind) {
      case Kind::Vertex:
        out += g.vertex_name(l.index);
        break;
      case Kind::Edge:
        out += g.edge_name(l.index);
        break;
      case Kind::Ghost:
        out += g.edge_name(l.index) + "*";
        break;
    }
  }
  return out;
}

}  // namespace lpa
