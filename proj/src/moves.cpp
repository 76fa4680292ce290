#include "lpa/moves.hpp"

#include "lpa/graph_ops.hpp"

namespace lpa {

namespace {

std::set<std::string> all_identifiers(const Graph& g) {
  std::set<std::string> taken(g.vertices().begin(), g.vertices().end());
  for (const auto& e : g.edges()) taken.insert(e.id);
  return taken;
}

void require_splice_vertex(const Graph& g, const std::string& u) {
  auto v = g.find_vertex(u);
  if (!v) throw MoveError("splice vertex '" + u + "' is not a vertex of the graph");
  if (g.is_sink(*v)) throw MoveError("splice vertex '" + u + "' is not regular (it is a sink)");
  if (!supports_two_return_paths(g, u)) {
    throw MoveError("splice vertex '" + u + "' does not support two return paths");
  }
}

SpliceResult attach(const Graph& g, const std::string& u, const Graph& piece, const std::string& anchor) {
  require_splice_vertex(g, u);
  auto joined = disjoint_union_with_names(g, piece);
  const std::string attached = joined.vertex_names.at(anchor);
  auto taken = all_identifiers(joined.graph);
  std::string d1 = fresh_name("d1", taken);
  taken.insert(d1);
  std::string d2 = fresh_name("d2", taken);
  std::vector<Edge> edges = joined.graph.edges();
  edges.push_back({d1, u, attached});
  edges.push_back({d2, attached, u});
  return {Graph(joined.graph.vertices(), std::move(edges)), attached};
}

}  // namespace

SpliceResult cuntz_splice_detailed(const Graph& g, const std::string& u) {
  return attach(g, u, builtin("E_star"), "v1");
}

Graph cuntz_splice(const Graph& g, const std::string& u) { return cuntz_splice_detailed(g, u).graph; }

SpliceResult double_cuntz_splice_detailed(const Graph& g, const std::string& u) {
  return attach(g, u, builtin("E_star_star"), "w1");
}

Graph double_cuntz_splice(const Graph& g, const std::string& u) { return double_cuntz_splice_detailed(g, u).graph; }

Graph cohn_graph(const Graph& g, const std::set<std::string>& complete_at) {
  return cohn_graph_detailed(g, complete_at).graph;
}

CohnGraphResult cohn_graph_detailed(const Graph& g, const std::set<std::string>& complete_at) {
  CohnGraphResult result;
  for (const auto& v : complete_at) {
    auto idx = g.find_vertex(v);
    if (!idx) throw MoveError("vertex '" + v + "' in V is not a vertex of the graph");
    if (g.is_sink(*idx)) throw MoveError("vertex '" + v + "' in V is a sink, not a regular vertex");
  }
  auto taken = all_identifiers(g);
  std::vector<std::string> vertices = g.vertices();
  std::vector<std::string> primed(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v) || complete_at.count(g.vertex_name(v))) continue;
    primed[v] = fresh_name(g.vertex_name(v) + "'", taken);
    taken.insert(primed[v]);
    vertices.push_back(primed[v]);
    result.primed_vertices[g.vertex_name(v)] = primed[v];
  }
  std::vector<Edge> edges = g.edges();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& target = primed[g.range(e)];
    if (target.empty()) continue;
    std::string name = fresh_name(g.edge_name(e) + "'", taken);
    taken.insert(name);
    edges.push_back({name, g.vertex_name(g.source(e)), target});
    result.primed_edges[g.edge_name(e)] = name;
  }
  result.graph = Graph(std::move(vertices), std::move(edges));
  return result;
}

Graph add_source(const Graph& g, const std::string& u) {
  if (!g.has_vertex(u)) throw MoveError("vertex '" + u + "' is not a vertex of the graph");
  auto taken = all_identifiers(g);
  std::string s = fresh_name("s", taken);
  taken.insert(s);
  std::string e = fresh_name("es", taken);
  std::vector<std::string> vertices = g.vertices();
  vertices.push_back(s);
  std::vector<Edge> edges = g.edges();
  edges.push_back({e, s, u});
  return Graph(std::move(vertices), std::move(edges));
}

std::string to_string(MoveKind m) {
  switch (m) {
    case MoveKind::CuntzSplice:
      return "cuntz-splice";
    case MoveKind::DoubleCuntzSplice:
      return "double-cuntz-splice";
    case MoveKind::Cohn:
      return "cohn";
    case MoveKind::AddSource:
      return "add-source";
  }
  return "?";
}

std::optional<MoveKind> parse_move_kind(const std::string& name) {
  for (auto m : {MoveKind::CuntzSplice, MoveKind::DoubleCuntzSplice, MoveKind::Cohn, MoveKind::AddSource}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

Check determinant_relation(const std::string& name, const GraphInvariants& before, const GraphInvariants& after,
                           int sign) {
  if (!before.determinant || !after.determinant) {
    return {name, CheckStatus::Skip, "determinant undefined for graphs with sinks"};
  }
  bool ok = *after.determinant == sign * *before.determinant;
  return make_check(name, ok, before.determinant->get_str() + " -> " + after.determinant->get_str());
}

Check group_relation(const GraphInvariants& before, const GraphInvariants& after) {
  return make_check("K0 invariant factors preserved", before.k0.same_group(after.k0),
                    render_group(before.k0) + " -> " + render_group(after.k0));
}

}  // namespace

MoveReport apply_move_with_report(const Graph& g, MoveKind move, const MoveParams& params) {
  Graph out;
  switch (move) {
    case MoveKind::CuntzSplice:
      out = cuntz_splice(g, params.at);
      break;
    case MoveKind::DoubleCuntzSplice:
      out = double_cuntz_splice(g, params.at);
      break;
    case MoveKind::Cohn:
      out = cohn_graph(g, params.complete_at);
      break;
    case MoveKind::AddSource:
      out = add_source(g, params.at);
      break;
  }

  MoveReport report{move, params, g, out, compute_invariants(g), compute_invariants(out), {}};
  auto& rel = report.relations;
  switch (move) {
    case MoveKind::CuntzSplice:
      rel.push_back(determinant_relation("determinant negated", report.before, report.after, -1));
      rel.push_back(group_relation(report.before, report.after));
      break;
    case MoveKind::DoubleCuntzSplice:
      rel.push_back(determinant_relation("determinant preserved", report.before, report.after, 1));
      rel.push_back(group_relation(report.before, report.after));
      break;
    case MoveKind::Cohn: {
      std::size_t missing = 0;
      std::size_t primed_edges = 0;
      std::vector<bool> gets_copy(g.vertex_count(), false);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!g.is_sink(v) && !params.complete_at.count(g.vertex_name(v))) {
          gets_copy[v] = true;
          ++missing;
        }
      }
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (gets_copy[g.range(e)]) ++primed_edges;
      rel.push_back(make_check("vertex count = |E0| + |reg \\ V|",
                               out.vertex_count() == g.vertex_count() + missing,
                               std::to_string(out.vertex_count())));
      rel.push_back(make_check("edge count = |E1| + |{e : r(e) in reg \\ V}|",
                               out.edge_count() == g.edge_count() + primed_edges, std::to_string(out.edge_count())));
      break;
    }
    case MoveKind::AddSource: {
      rel.push_back(group_relation(report.before, report.after));
      rel.push_back(determinant_relation("determinant preserved", report.before, report.after, 1));
      // [v] -> [v] is an isomorphism, and the new unit is the old unit plus
      // the class of the source, which equals [u].
      auto natural = natural_k0_map(g, out);
      rel.push_back(make_check("[v] -> [v] induces a K0 isomorphism", natural.iso(),
                               std::string("well-defined=") + (natural.well_defined ? "yes" : "no") +
                                   " surjective=" + (natural.surjective ? "yes" : "no")));
      std::map<std::string, Integer> shift{{params.at, Integer(1)}};
      for (const auto& v : g.vertices()) shift[v] += 1;
      for (const auto& v : out.vertices()) shift[v] -= 1;
      rel.push_back(make_check("unit class shifted by [u]", k0_vanishes(out, shift),
                               render(report.before.k0) + " -> " + render(report.after.k0)));
      break;
    }
  }
  return report;
}

}  // namespace lpa
