#include <gtest/gtest.h>

#include "lpa/corpus.hpp"
#include "lpa/graph.hpp"
#include "lpa/graph_ops.hpp"
#include "lpa/invariants.hpp"
#include "lpa/k0.hpp"
#include "lpa/moves.hpp"

using namespace lpa;

namespace {

Graph rose(int loops) {
  std::vector<Edge> edges;
  for (int i = 1; i <= loops; ++i) edges.push_back({"l" + std::to_string(i), "u", "u"});
  return Graph({"u"}, edges);
}

const Check* find_check(const MoveReport& r, const std::string& prefix) {
  for (const auto& c : r.relations)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

}  // namespace

TEST(CuntzSplice, R3) {
  auto r3 = builtin("R3");
  auto s = cuntz_splice(r3, "u");
  EXPECT_EQ(s.vertex_count(), 3u);
  EXPECT_EQ(s.edge_count(), 9u);
  EXPECT_EQ(det_identity_minus_transpose(r3), -2);
  EXPECT_EQ(det_identity_minus_transpose(s), 2);
}

TEST(CuntzSplice, EStarGivesEStarStar) {
  auto s = cuntz_splice(builtin("E_star"), "v1");
  EXPECT_EQ(s.vertex_count(), 4u);
  EXPECT_EQ(s.edge_count(), 10u);
  EXPECT_EQ(det_identity_minus_transpose(s), 1);
  EXPECT_TRUE(graph_isomorphic(s, builtin("E_star_star")).has_value());
}

TEST(CuntzSplice, Preconditions) {
  EXPECT_THROW(cuntz_splice(rose(1), "u"), MoveError);
  EXPECT_THROW(cuntz_splice(rose(3), "nowhere"), MoveError);
}

TEST(CuntzSplice, FreshNamesOnCollision) {
  Graph g({"u", "v1"}, {{"a", "u", "u"}, {"b", "u", "v1"}, {"c", "v1", "u"}, {"d1", "v1", "v1"}});
  auto s = cuntz_splice_detailed(g, "u");
  EXPECT_NE(s.attached, "v1");
  EXPECT_EQ(s.graph.vertex_count(), 4u);
  EXPECT_EQ(s.graph.edge_count(), g.edge_count() + 6);
  EXPECT_EQ(det_identity_minus_transpose(s.graph), -det_identity_minus_transpose(g));
}

TEST(DoubleSplice, R3) {
  auto r3 = builtin("R3");
  auto d = double_cuntz_splice(r3, "u");
  EXPECT_EQ(d.vertex_count(), 5u);
  EXPECT_EQ(det_identity_minus_transpose(d), -2);
  EXPECT_TRUE(graph_isomorphic(d, cuntz_splice(cuntz_splice(r3, "u"), "v1")).has_value());
  EXPECT_THROW(double_cuntz_splice(rose(1), "u"), MoveError);
}

TEST(Cohn, PaperPictures) {
  EXPECT_EQ(cohn_graph(builtin("E_star"), {"v2"}), builtin("F_star"));
  EXPECT_EQ(cohn_graph(builtin("E_star_star"), {"w2", "w3", "w4"}), builtin("F_star_star"));
}

TEST(Cohn, AllRegularIsIdentity) {
  for (const auto& g : random_spi_corpus(1, 20, 5)) EXPECT_EQ(cohn_graph(g, regular_vertices(g)), g);
}

TEST(Cohn, RejectsSingularOrUnknown) {
  EXPECT_THROW(cohn_graph(builtin("F_star"), {"v1'"}), MoveError);
  EXPECT_THROW(cohn_graph(builtin("E_star"), {"zz"}), MoveError);
}

TEST(Cohn, Counts) {
  for (const auto& g : random_spi_corpus(2, 20, 5)) {
    std::set<std::string> v{g.vertex_name(0)};
    auto c = cohn_graph_detailed(g, v);
    std::size_t primed_edges = 0;
    for (const auto& e : g.edges())
      if (!v.count(e.range)) ++primed_edges;
    EXPECT_EQ(c.graph.vertex_count(), g.vertex_count() + g.vertex_count() - 1);
    EXPECT_EQ(c.graph.edge_count(), g.edge_count() + primed_edges);
    EXPECT_EQ(c.primed_edges.size(), primed_edges);
  }
}

TEST(AddSource, Shape) {
  auto g = add_source(builtin("E_star"), "v1");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 5u);
  EXPECT_THROW(add_source(Graph(), "u"), MoveError);
  EXPECT_THROW(add_source(builtin("E_star"), "zz"), MoveError);
}

TEST(AddSource, RestoresUnitAfterSplice) {
  auto r3 = builtin("R3");
  auto g = add_source(cuntz_splice(r3, "u"), "u");
  auto a = compute_invariants(r3);
  auto b = compute_invariants(g);
  EXPECT_EQ(pointed_iso_exists(a.k0, b.k0).kind, PointedIsoVerdict::Kind::Yes);
  EXPECT_TRUE(natural_k0_map(r3, g).iso());
}

TEST(MoveReport, R3Splice) {
  auto r = apply_move_with_report(builtin("R3"), MoveKind::CuntzSplice, {"u", {}});
  ASSERT_NE(find_check(r, "determinant negated"), nullptr);
  EXPECT_EQ(find_check(r, "determinant negated")->status, CheckStatus::Pass);
  ASSERT_NE(find_check(r, "K0 invariant factors preserved"), nullptr);
  EXPECT_EQ(find_check(r, "K0 invariant factors preserved")->status, CheckStatus::Pass);
  EXPECT_TRUE(r.ok());
}

TEST(MoveReport, R3DoubleSplice) {
  auto r = apply_move_with_report(builtin("R3"), MoveKind::DoubleCuntzSplice, {"u", {}});
  ASSERT_NE(find_check(r, "determinant preserved"), nullptr);
  EXPECT_TRUE(r.ok());
}

TEST(MoveReport, CohnOfEStar) {
  auto r = apply_move_with_report(builtin("E_star"), MoveKind::Cohn, {"", {"v2"}});
  EXPECT_EQ(r.output, builtin("F_star"));
  EXPECT_EQ(render(r.after.k0), "Z ; unit=(-1)");
  EXPECT_TRUE(r.ok());
}

TEST(MoveKinds, RoundTrip) {
  for (auto k : {MoveKind::CuntzSplice, MoveKind::DoubleCuntzSplice, MoveKind::Cohn, MoveKind::AddSource})
    EXPECT_EQ(parse_move_kind(to_string(k)), k);
  EXPECT_FALSE(parse_move_kind("shuffle").has_value());
}

TEST(MoveProperties, RandomSpiCorpus) {
  auto corpus = random_spi_corpus(20240611, 50, 6);
  ASSERT_EQ(corpus.size(), 50u);
  for (const auto& g : corpus) {
    auto u = find_splice_vertex(g);
    ASSERT_TRUE(u.has_value());
    auto before = compute_invariants(g);
    auto single = compute_invariants(cuntz_splice(g, *u));
    auto twice = compute_invariants(double_cuntz_splice(g, *u));
    EXPECT_EQ(*single.determinant, -*before.determinant);
    EXPECT_EQ(single.k0.invariant_factors, before.k0.invariant_factors);
    EXPECT_EQ(single.k0.free_rank, before.k0.free_rank);
    EXPECT_EQ(*twice.determinant, *before.determinant);
    EXPECT_TRUE(single.spi.is_spi);
    EXPECT_TRUE(twice.spi.is_spi);

    auto restored = add_source(cuntz_splice(g, *u), *u);
    EXPECT_TRUE(natural_k0_map(g, restored).iso());
  }
}
