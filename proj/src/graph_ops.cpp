#include "lpa/graph_ops.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lpa {

IntMatrix adjacency_matrix(const Graph& g) {
  IntMatrix a(g.vertex_count(), g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) a(g.source(e), g.range(e)) += 1;
  return a;
}

namespace {

// reach[v][w]: a path of length >= 0 from v to w.
std::vector<std::vector<bool>> reachability(const Graph& g, const std::vector<bool>& removed = {}) {
  const std::size_t n = g.vertex_count();
  auto succ = g.successors();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (VertexId v = 0; v < n; ++v) {
    if (!removed.empty() && removed[v]) continue;
    std::vector<VertexId> stack{v};
    reach[v][v] = true;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : succ[x]) {
        if (!removed.empty() && removed[y]) continue;
        if (!reach[v][y]) {
          reach[v][y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  return reach;
}

std::vector<std::vector<VertexId>> components_from(const std::vector<std::vector<bool>>& reach,
                                                   const std::vector<bool>& removed) {
  const std::size_t n = reach.size();
  std::vector<bool> assigned(n, false);
  std::vector<std::vector<VertexId>> comps;
  for (VertexId v = 0; v < n; ++v) {
    if (assigned[v] || (!removed.empty() && removed[v])) continue;
    std::vector<VertexId> comp;
    for (VertexId w = v; w < n; ++w) {
      if (!assigned[w] && reach[v][w] && reach[w][v]) {
        assigned[w] = true;
        comp.push_back(w);
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool has_loop(const Graph& g, VertexId v) {
  for (EdgeId e : g.out_edges(v))
    if (g.range(e) == v) return true;
  return false;
}

bool component_is_cyclic(const Graph& g, const std::vector<VertexId>& comp) {
  return comp.size() > 1 || has_loop(g, comp.front());
}

}  // namespace

std::vector<std::vector<VertexId>> strongly_connected_components(const Graph& g) {
  return components_from(reachability(g), {});
}

std::string SpiFailure::describe() const {
  std::ostringstream out;
  auto list = [&](std::size_t from) {
    out << "{";
    for (std::size_t i = from; i < vertices.size(); ++i) out << (i > from ? "," : "") << vertices[i];
    out << "}";
  };
  switch (kind) {
    case Kind::ExitFreeCycle:
      out << "cycle without exit on ";
      list(0);
      break;
    case Kind::Unreachable:
      out << "vertex " << vertices.at(0) << " does not reach cyclic component ";
      list(1);
      break;
    case Kind::Sink:
      out << "sink " << vertices.at(0);
      break;
    case Kind::NoCycle:
      out << "no cycle";
      break;
  }
  return out.str();
}

SpiReport is_spi(const Graph& g) {
  SpiReport report;
  const std::size_t n = g.vertex_count();

  // A cycle lacks an exit iff every vertex on it has out-degree one, so it
  // is found by following unique successors.
  std::vector<bool> on_reported(n, false);
  for (VertexId start = 0; start < n; ++start) {
    if (on_reported[start] || g.out_degree(start) != 1) continue;
    std::vector<VertexId> walk{start};
    VertexId cur = g.range(g.out_edges(start).front());
    std::set<VertexId> seen{start};
    while (cur != start && g.out_degree(cur) == 1 && !seen.count(cur)) {
      seen.insert(cur);
      walk.push_back(cur);
      cur = g.range(g.out_edges(cur).front());
    }
    if (cur != start) continue;
    SpiFailure f{SpiFailure::Kind::ExitFreeCycle, {}};
    for (VertexId v : walk) {
      on_reported[v] = true;
      f.vertices.push_back(g.vertex_name(v));
    }
    report.failures.push_back(std::move(f));
  }

  for (VertexId v = 0; v < n; ++v) {
    if (g.is_sink(v)) report.failures.push_back({SpiFailure::Kind::Sink, {g.vertex_name(v)}});
  }

  auto reach = reachability(g);
  auto comps = components_from(reach, {});
  bool any_cycle = false;
  for (const auto& comp : comps) {
    if (!component_is_cyclic(g, comp)) continue;
    any_cycle = true;
    for (VertexId v = 0; v < n; ++v) {
      if (reach[v][comp.front()]) continue;
      SpiFailure f{SpiFailure::Kind::Unreachable, {g.vertex_name(v)}};
      for (VertexId w : comp) f.vertices.push_back(g.vertex_name(w));
      report.failures.push_back(std::move(f));
    }
  }
  if (!any_cycle) report.failures.push_back({SpiFailure::Kind::NoCycle, {}});

  report.is_spi = report.failures.empty();
  return report;
}

bool supports_two_return_paths(const Graph& g, const std::string& u_name) {
  const VertexId u = g.vertex_index(u_name);
  const std::size_t n = g.vertex_count();
  auto reach = reachability(g);

  // Count simple first-return cycles at u (as edge sequences), stopping at two.
  std::size_t found = 0;
  std::vector<VertexId> first_cycle;
  std::vector<bool> on_path(n, false);
  std::vector<VertexId> path;
  std::function<void(VertexId)> dfs = [&](VertexId x) {
    for (EdgeId e : g.out_edges(x)) {
      if (found >= 2) return;
      VertexId y = g.range(e);
      if (y == u) {
        if (found == 0) first_cycle = path;
        ++found;
        continue;
      }
      if (on_path[y] || !reach[y][u]) continue;
      on_path[y] = true;
      path.push_back(y);
      dfs(y);
      path.pop_back();
      on_path[y] = false;
    }
  };
  dfs(u);

  if (found >= 2) return true;
  if (found == 0 || first_cycle.empty()) return false;

  std::vector<bool> removed(n, false);
  removed[u] = true;
  auto reach_without_u = reachability(g, removed);
  for (const auto& comp : components_from(reach_without_u, removed)) {
    if (!component_is_cyclic(g, comp)) continue;
    for (VertexId w : first_cycle) {
      if (std::find(comp.begin(), comp.end(), w) != comp.end()) return true;
    }
  }
  return false;
}

namespace {

struct Profile {
  std::size_t out_degree;
  std::size_t in_degree;
  long loops;
  std::vector<long> out_multiplicities;  // sorted
  std::vector<long> in_multiplicities;

  friend bool operator==(const Profile&, const Profile&) = default;
};

std::vector<Profile> profiles(const Graph& g, const IntMatrix& a) {
  const std::size_t n = g.vertex_count();
  std::vector<Profile> out(n);
  for (VertexId v = 0; v < n; ++v) {
    out[v].out_degree = g.out_degree(v);
    out[v].in_degree = g.in_edges(v).size();
    out[v].loops = a(v, v).get_si();
    for (VertexId w = 0; w < n; ++w) {
      if (a(v, w) != 0) out[v].out_multiplicities.push_back(a(v, w).get_si());
      if (a(w, v) != 0) out[v].in_multiplicities.push_back(a(w, v).get_si());
    }
    std::sort(out[v].out_multiplicities.begin(), out[v].out_multiplicities.end());
    std::sort(out[v].in_multiplicities.begin(), out[v].in_multiplicities.end());
  }
  return out;
}

}  // namespace

std::optional<GraphIsomorphism> graph_isomorphic(const Graph& g, const Graph& h, const SizeCaps& caps) {
  if (g.vertex_count() > caps.isomorphism_vertices || h.vertex_count() > caps.isomorphism_vertices) {
    throw SizeCapError("graph isomorphism refused: more than " + std::to_string(caps.isomorphism_vertices) +
                       " vertices");
  }
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return std::nullopt;
  const std::size_t n = g.vertex_count();
  const IntMatrix ag = adjacency_matrix(g);
  const IntMatrix ah = adjacency_matrix(h);
  const auto pg = profiles(g, ag);
  const auto ph = profiles(h, ah);

  std::vector<VertexId> image(n);
  std::vector<bool> used(n, false);
  std::function<bool(VertexId)> extend = [&](VertexId v) -> bool {
    if (v == n) return true;
    for (VertexId w = 0; w < n; ++w) {
      if (used[w] || !(pg[v] == ph[w])) continue;
      bool ok = true;
      for (VertexId x = 0; x < v && ok; ++x) {
        ok = ag(v, x) == ah(w, image[x]) && ag(x, v) == ah(image[x], w);
      }
      if (!ok) continue;
      image[v] = w;
      used[w] = true;
      if (extend(v + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;

  GraphIsomorphism iso;
  for (VertexId v = 0; v < n; ++v) iso.vertex_map.emplace_back(g.vertex_name(v), h.vertex_name(image[v]));
  // Parallel edges are paired off in declaration order.
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> h_edges;
  for (EdgeId e = 0; e < h.edge_count(); ++e) h_edges[{h.source(e), h.range(e)}].push_back(e);
  std::map<std::pair<VertexId, VertexId>, std::size_t> taken;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::pair<VertexId, VertexId> key{image[g.source(e)], image[g.range(e)]};
    std::size_t k = taken[key]++;
    iso.edge_map.emplace_back(g.edge_name(e), h.edge_name(h_edges.at(key).at(k)));
  }
  return iso;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (std::size_t k = 2;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!taken.count(candidate)) return candidate;
  }
}

UnionResult disjoint_union_with_names(const Graph& g, const Graph& h) {
  std::set<std::string> taken;
  for (const auto& v : g.vertices()) taken.insert(v);
  for (const auto& e : g.edges()) taken.insert(e.id);

  UnionResult result;
  std::vector<std::string> vertices = g.vertices();
  std::vector<Edge> edges = g.edges();
  for (const auto& v : h.vertices()) {
    std::string name = fresh_name(v, taken);
    taken.insert(name);
    result.vertex_names[v] = name;
    vertices.push_back(name);
  }
  for (const auto& e : h.edges()) {
    std::string name = fresh_name(e.id, taken);
    taken.insert(name);
    result.edge_names[e.id] = name;
    edges.push_back({name, result.vertex_names.at(e.source), result.vertex_names.at(e.range)});
  }
  result.graph = Graph(std::move(vertices), std::move(edges));
  return result;
}

Graph disjoint_union(const Graph& g, const Graph& h) { return disjoint_union_with_names(g, h).graph; }

}  // namespace lpa
