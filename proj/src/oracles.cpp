#include "lpa/oracles.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>

#include "lpa/moves.hpp"

namespace lpa {

bool spi_by_hereditary_saturated(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0 || n > 20) throw std::invalid_argument("oracle handles 1..20 vertices");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;

  for (std::uint32_t mask = 1; mask < full; ++mask) {
    bool hereditary = true;
    bool saturated = true;
    for (VertexId v = 0; v < n; ++v) {
      bool inside = mask >> v & 1;
      bool all_ranges_inside = true;
      for (EdgeId e : g.out_edges(v)) {
        bool r_inside = mask >> g.range(e) & 1;
        if (inside && !r_inside) hereditary = false;
        if (!r_inside) all_ranges_inside = false;
      }
      if (!inside && !g.is_sink(v) && all_ranges_inside) saturated = false;
    }
    if (hereditary && saturated) return false;
  }

  // A cycle without an exit is a cycle all of whose vertices emit exactly one edge.
  for (VertexId v = 0; v < n; ++v) {
    VertexId w = v;
    for (std::size_t step = 0; step < n && g.out_degree(w) == 1; ++step) {
      w = g.range(g.out_edges(w).front());
      if (w == v) return false;
    }
  }

  // reach[v]: vertices reachable from v by a path of length >= 1.
  std::vector<std::uint32_t> reach(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    std::vector<VertexId> stack;
    for (EdgeId e : g.out_edges(v)) stack.push_back(g.range(e));
    while (!stack.empty()) {
      VertexId w = stack.back();
      stack.pop_back();
      if (reach[v] >> w & 1) continue;
      reach[v] |= std::uint32_t{1} << w;
      for (EdgeId e : g.out_edges(w)) stack.push_back(g.range(e));
    }
  }
  std::uint32_t on_cycle = 0;
  for (VertexId v = 0; v < n; ++v)
    if (reach[v] >> v & 1) on_cycle |= std::uint32_t{1} << v;
  for (VertexId v = 0; v < n; ++v) {
    std::uint32_t here = reach[v] | (std::uint32_t{1} << v);
    if ((here & on_cycle) == 0) return false;
  }
  return true;
}

namespace {

struct Path {
  std::vector<EdgeId> edges;
  VertexId end;
};

// All paths of each length 0..max_length; length-0 paths are the vertices.
std::vector<std::vector<Path>> paths_by_length(const Graph& g, std::size_t max_length) {
  std::vector<std::vector<Path>> out(max_length + 1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) out[0].push_back({{}, v});
  for (std::size_t k = 1; k <= max_length; ++k) {
    for (const auto& p : out[k - 1]) {
      for (EdgeId e : g.out_edges(p.end)) {
        Path q = p;
        q.edges.push_back(e);
        q.end = g.range(e);
        out[k].push_back(std::move(q));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<PathMonomial> normal_monomials(const AlgebraContext& ctx, std::size_t max_length) {
  auto paths = paths_by_length(ctx.graph(), max_length);
  std::vector<PathMonomial> out;
  for (std::size_t a = 0; a <= max_length; ++a) {
    for (std::size_t b = 0; a + b <= max_length; ++b) {
      for (const auto& alpha : paths[a]) {
        for (const auto& beta : paths[b]) {
          if (alpha.end != beta.end) continue;
          PathMonomial m{alpha.edges, beta.edges, alpha.end};
          if (is_normal(ctx, m)) out.push_back(std::move(m));
        }
      }
    }
  }
  return out;
}

namespace {

constexpr std::int64_t kPrime = 2147483647;

std::int64_t mod(std::int64_t x) {
  x %= kPrime;
  return x < 0 ? x + kPrime : x;
}

std::int64_t inverse_mod(std::int64_t a) {
  std::int64_t result = 1;
  std::int64_t base = mod(a);
  for (std::int64_t e = kPrime - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % kPrime;
    base = base * base % kPrime;
  }
  return result;
}

using SparseRow = std::map<std::size_t, std::int64_t>;

// Incremental rank of sparse rows modulo kPrime.
class ModularRank {
 public:
  void add(SparseRow row) {
    while (!row.empty()) {
      auto [col, val] = *row.begin();
      auto pivot = pivots_.find(col);
      if (pivot == pivots_.end()) {
        std::int64_t inv = inverse_mod(val);
        for (auto& [c, x] : row) x = x * inv % kPrime;
        pivots_.emplace(col, std::move(row));
        return;
      }
      for (const auto& [c, x] : pivot->second) {
        std::int64_t updated = mod(row[c] - val * x % kPrime);
        if (updated == 0) {
          row.erase(c);
        } else {
          row[c] = updated;
        }
      }
    }
  }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, SparseRow> pivots_;
};

// A path in the Cohn graph keyed by its start vertex and edge list.
using PathKey = std::pair<VertexId, std::vector<EdgeId>>;
using Vector = std::map<PathKey, std::int64_t>;

}  // namespace

BasisSoundness basis_soundness(const Graph& g, const std::set<std::string>& complete_at, std::size_t max_length,
                               std::size_t probe_length) {
  AlgebraContext ctx(g, complete_at);
  BasisSoundness out;
  auto monomials = normal_monomials(ctx, max_length);
  out.monomials = monomials.size();

  // Images of source generators as lists of target generators.
  auto cohn = cohn_graph_detailed(g, complete_at);
  const Graph& f = cohn.graph;
  std::vector<std::vector<VertexId>> vertex_image(g.vertex_count());
  std::vector<std::vector<EdgeId>> edge_image(g.edge_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    vertex_image[v].push_back(f.vertex_index(g.vertex_name(v)));
    if (auto it = cohn.primed_vertices.find(g.vertex_name(v)); it != cohn.primed_vertices.end())
      vertex_image[v].push_back(f.vertex_index(it->second));
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    edge_image[e].push_back(f.edge_index(g.edge_name(e)));
    if (auto it = cohn.primed_edges.find(g.edge_name(e)); it != cohn.primed_edges.end())
      edge_image[e].push_back(f.edge_index(it->second));
  }

  auto apply_letter = [&](const Letter& l, const Vector& x) {
    Vector y;
    for (const auto& [key, c] : x) {
      const auto& [start, edges] = key;
      switch (l.kind) {
        case Letter::Kind::Vertex:
          for (VertexId w : vertex_image[l.index])
            if (w == start) y[key] = mod(y[key] + c);
          break;
        case Letter::Kind::Edge:
          for (EdgeId h : edge_image[l.index]) {
            if (f.range(h) != start) continue;
            std::vector<EdgeId> longer{h};
            longer.insert(longer.end(), edges.begin(), edges.end());
            auto& slot = y[{f.source(h), std::move(longer)}];
            slot = mod(slot + c);
          }
          break;
        case Letter::Kind::Ghost:
          for (EdgeId h : edge_image[l.index]) {
            if (edges.empty() || edges.front() != h) continue;
            auto& slot = y[{f.range(h), std::vector<EdgeId>(edges.begin() + 1, edges.end())}];
            slot = mod(slot + c);
          }
          break;
      }
    }
    std::erase_if(y, [](const auto& kv) { return kv.second == 0; });
    return y;
  };

  // Probe inputs: paths ending at sinks, read backwards from the sink.
  std::vector<PathKey> probes;
  std::vector<PathKey> frontier;
  for (VertexId v = 0; v < f.vertex_count(); ++v)
    if (f.is_sink(v)) frontier.push_back({v, {}});
  for (std::size_t len = 0; len <= probe_length && !frontier.empty(); ++len) {
    std::vector<PathKey> next;
    for (const auto& p : frontier) {
      probes.push_back(p);
      for (EdgeId h : f.in_edges(p.first)) {
        std::vector<EdgeId> longer{h};
        longer.insert(longer.end(), p.second.begin(), p.second.end());
        next.push_back({f.source(h), std::move(longer)});
      }
    }
    frontier = std::move(next);
  }

  std::map<std::pair<std::size_t, PathKey>, std::size_t> columns;
  ModularRank rank;
  for (const auto& m : monomials) {
    Word w = to_word(m);
    SparseRow row;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      Vector x{{probes[i], 1}};
      for (auto it = w.rbegin(); it != w.rend() && !x.empty(); ++it) x = apply_letter(*it, x);
      for (const auto& [key, c] : x) {
        auto [col, inserted] = columns.try_emplace({i, key}, columns.size());
        row[col->second] = c;
      }
    }
    rank.add(std::move(row));
  }
  out.rank = rank.rank();

  // Spanning: every raw word up to the bound normalizes into short normal forms.
  std::vector<Letter> letters;
  for (VertexId v = 0; v < g.vertex_count(); ++v) letters.push_back({Letter::Kind::Vertex, v});
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    letters.push_back({Letter::Kind::Edge, e});
    letters.push_back({Letter::Kind::Ghost, e});
  }
  std::set<PathMonomial> reached;
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 0; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& word : layer) {
      auto x = normalize(ctx, {{Rational(1), word}});
      for (const auto& [m, c] : x.terms()) {
        if (m.length() > max_length || !is_normal(ctx, m)) out.raw_words_stay_short = false;
        reached.insert(m);
      }
      if (len < max_length) {
        for (const auto& l : letters) {
          Word longer = word;
          longer.push_back(l);
          next.push_back(std::move(longer));
        }
      }
    }
    layer = std::move(next);
  }
  out.reached = reached.size();
  return out;
}

}  // namespace lpa
