#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "lpa/corpus.hpp"
#include "lpa/graph.hpp"
#include "lpa/graph_ops.hpp"
#include "lpa/moves.hpp"

using namespace lpa;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_graph(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

Graph rose(int loops) {
  std::vector<Edge> edges;
  for (int i = 1; i <= loops; ++i) edges.push_back({"l" + std::to_string(i), "u", "u"});
  return Graph({"u"}, edges);
}

}  // namespace

TEST(Parse, EStarFromText) {
  auto g = parse_graph(R"({"vertices": ["v1", "v2"],
    "edges": [["e1","v1","v1"], ["e2","v1","v2"], ["e3","v2","v1"], ["e4","v2","v2"]]})");
  EXPECT_EQ(g, builtin("E_star"));
}

TEST(Parse, EmptyGraph) {
  auto g = parse_graph(R"({"vertices": [], "edges": []})");
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Parse, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("{\n\"vertices\": [\"a\"],\n\"edges\": [[\"e\", \"a\", \"b\"]]\n}"), 3u);
  EXPECT_EQ(parse_error_line("{\n\"vertices\": [\"a\", \"a\"],\n\"edges\": []\n}"), 2u);
  EXPECT_EQ(parse_error_line("{\"edges\": []}"), 1u);
  EXPECT_GT(parse_error_line("{\n\"vertices\": [\"a\"],\n\"edges\": [[\"e\", \"a\"]]\n}"), 0u);
  EXPECT_GT(parse_error_line("not json"), 0u);
}

TEST(Parse, DuplicateEdgeNameRejected) {
  EXPECT_THROW(parse_graph(R"({"vertices": ["a"], "edges": [["e","a","a"], ["e","a","a"]]})"), ParseError);
}

TEST(Render, RoundTripBuiltins) {
  for (const auto& name : builtin_names()) {
    auto g = builtin(name);
    EXPECT_EQ(parse_graph(render_graph(g)), g) << name;
  }
}

TEST(Render, RoundTripRandomGraphs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto g = random_graph(rng, 6);
    EXPECT_EQ(parse_graph(render_graph(g)), g);
  }
}

TEST(Builtins, Shapes) {
  auto fs = builtin("F_star");
  EXPECT_EQ(fs.vertex_count(), 3u);
  EXPECT_EQ(fs.edge_count(), 6u);
  for (auto e : {"e1", "e2", "e3", "e4", "e1'", "e3'"}) EXPECT_TRUE(fs.has_edge(e)) << e;
  auto ess = builtin("E_star_star");
  EXPECT_EQ(ess.vertex_count(), 4u);
  EXPECT_EQ(ess.edge_count(), 10u);
  EXPECT_TRUE(ess.has_edge("f10"));
  auto r3 = builtin("R3");
  EXPECT_EQ(r3.vertex_count(), 1u);
  EXPECT_EQ(r3.edge_count(), 3u);
  EXPECT_THROW(builtin("nope"), GraphError);
}

TEST(RegularVertices, Examples) {
  EXPECT_EQ(regular_vertices(builtin("E_star")), (std::set<std::string>{"v1", "v2"}));
  EXPECT_EQ(regular_vertices(builtin("F_star")), (std::set<std::string>{"v1", "v2"}));
  EXPECT_TRUE(regular_vertices(Graph({"x"}, {})).empty());
}

TEST(Adjacency, Examples) {
  EXPECT_EQ(adjacency_matrix(builtin("E_star")), (IntMatrix{{1, 1}, {1, 1}}));
  EXPECT_EQ(adjacency_matrix(builtin("E_star_star")),
            (IntMatrix{{1, 1, 1, 0}, {1, 1, 0, 0}, {1, 0, 1, 1}, {0, 0, 1, 1}}));
  EXPECT_EQ(adjacency_matrix(Graph({"a", "b", "c"}, {})), IntMatrix(3, 3));
}

TEST(Spi, Examples) {
  EXPECT_TRUE(is_spi(builtin("E_star")).is_spi);

  auto one_loop = is_spi(rose(1));
  EXPECT_FALSE(one_loop.is_spi);
  ASSERT_FALSE(one_loop.failures.empty());
  EXPECT_EQ(one_loop.failures.front().kind, SpiFailure::Kind::ExitFreeCycle);

  auto fs = is_spi(builtin("F_star"));
  EXPECT_FALSE(fs.is_spi);
  bool sink_reported = false;
  for (const auto& f : fs.failures)
    if (f.kind == SpiFailure::Kind::Sink && f.vertices == std::vector<std::string>{"v1'"}) sink_reported = true;
  EXPECT_TRUE(sink_reported);

  auto acyclic = is_spi(Graph({"a", "b"}, {{"x", "a", "b"}, {"y", "b", "a"}, {"z", "a", "a"}, {"t", "b", "b"}}));
  EXPECT_TRUE(acyclic.is_spi);
  auto no_cycle = is_spi(Graph({"a"}, {}));
  EXPECT_FALSE(no_cycle.is_spi);
}

TEST(Spi, SpiGraphsHaveNoSinks) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto g = random_graph(rng, 5);
    if (is_spi(g).is_spi) EXPECT_EQ(regular_vertices(g).size(), g.vertex_count());
  }
}

TEST(ReturnPaths, Examples) {
  EXPECT_TRUE(supports_two_return_paths(rose(3), "u"));
  EXPECT_FALSE(supports_two_return_paths(rose(1), "u"));
  Graph cyc({"u", "w"}, {{"a", "u", "w"}, {"b", "w", "u"}, {"c", "w", "w"}});
  EXPECT_TRUE(supports_two_return_paths(cyc, "u"));
}

TEST(Isomorphism, PaperExamples) {
  auto fss = builtin("F_star_star");
  auto spliced = cuntz_splice(builtin("F_star"), "v1");
  EXPECT_FALSE(graph_isomorphic(fss, spliced).has_value());

  auto r3 = builtin("R3");
  auto twice = cuntz_splice(cuntz_splice(r3, "u"), "v1");
  EXPECT_TRUE(graph_isomorphic(double_cuntz_splice(r3, "u"), twice).has_value());
}

TEST(Isomorphism, SelfIsIdentityOnVertices) {
  for (const auto& name : builtin_names()) {
    auto g = builtin(name);
    auto iso = graph_isomorphic(g, g);
    ASSERT_TRUE(iso.has_value()) << name;
    EXPECT_EQ(iso->vertex_map.size(), g.vertex_count());
  }
}

TEST(Isomorphism, RelabelledRandomGraphs) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto g = random_graph(rng, 6);
    std::vector<std::string> names = g.vertices();
    std::vector<std::size_t> perm(names.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::map<std::string, std::string> rename;
    std::vector<std::string> vs;
    for (std::size_t k = 0; k < names.size(); ++k) {
      rename[names[k]] = "z" + std::to_string(perm[k]);
      vs.push_back("z" + std::to_string(k));
    }
    std::vector<Edge> es;
    for (const auto& e : g.edges()) es.push_back({"q" + e.id, rename[e.source], rename[e.range]});
    std::shuffle(es.begin(), es.end(), rng);
    EXPECT_TRUE(graph_isomorphic(g, Graph(vs, es)).has_value());
    if (!es.empty()) {
      es.pop_back();
      EXPECT_FALSE(graph_isomorphic(g, Graph(vs, es)).has_value());
    }
  }
}

TEST(DisjointUnion, Counts) {
  auto es = builtin("E_star");
  auto u = disjoint_union(es, es);
  EXPECT_EQ(u.vertex_count(), 4u);
  EXPECT_EQ(u.edge_count(), 8u);
  auto a = adjacency_matrix(u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 2; j < 4; ++j) {
      EXPECT_EQ(a(i, j), 0);
      EXPECT_EQ(a(j, i), 0);
    }
  EXPECT_EQ(disjoint_union(es, Graph()), es);
  auto rf = disjoint_union(builtin("R3"), builtin("F_star"));
  EXPECT_EQ(rf.vertex_count(), 4u);
  EXPECT_EQ(rf.edge_count(), 9u);
}

TEST(FreshName, AvoidsTaken) {
  EXPECT_EQ(fresh_name("s", {"a"}), "s");
  auto n = fresh_name("s", {"s"});
  EXPECT_NE(n, "s");
  EXPECT_TRUE(is_valid_identifier(n));
}
