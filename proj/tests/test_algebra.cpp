#include <gtest/gtest.h>

#include <random>

#include "lpa/algebra.hpp"
#include "lpa/expression.hpp"
#include "lpa/graph.hpp"
#include "lpa/limits.hpp"
#include "lpa/oracles.hpp"

using namespace lpa;

namespace {

AlgebraContext leavitt_e_star() { return AlgebraContext::leavitt(builtin("E_star")); }
AlgebraContext cohn_e_star() { return AlgebraContext(builtin("E_star"), {"v2"}); }

std::string eval(const AlgebraContext& ctx, const std::string& text) {
  return evaluate_expression(ctx, text).to_string();
}

Word random_word(std::mt19937_64& rng, const Graph& g, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> len(1, max_length);
  std::uniform_int_distribution<int> kind(0, 2);
  Word w;
  for (std::size_t i = len(rng); i > 0; --i) {
    int k = kind(rng);
    if (k == 0) {
      w.push_back({Letter::Kind::Vertex, std::uniform_int_distribution<std::size_t>(0, g.vertex_count() - 1)(rng)});
    } else {
      auto e = std::uniform_int_distribution<std::size_t>(0, g.edge_count() - 1)(rng);
      w.push_back({k == 1 ? Letter::Kind::Edge : Letter::Kind::Ghost, e});
    }
  }
  return w;
}

// Random elements built from short words that compose in the graph, so products are rarely zero.
AlgebraElement random_element(std::mt19937_64& rng, const AlgebraContext& ctx) {
  std::vector<WeightedWord> words;
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int i = 0; i < 3; ++i) words.push_back({Rational(coeff(rng)), random_word(rng, ctx.graph(), 4)});
  return normalize(ctx, words);
}

}  // namespace

TEST(Generators, Examples) {
  auto ctx = leavitt_e_star();
  EXPECT_EQ(unit(ctx).to_string(), "v1 + v2");
  EXPECT_EQ((ghost(ctx, "e1") * edge(ctx, "e1")).to_string(), "v1");
  EXPECT_TRUE((ghost(ctx, "e1") * edge(ctx, "e2")).is_zero());
  EXPECT_THROW(edge(ctx, "zz"), AlgebraError);
}

TEST(Multiply, CohnExamples) {
  auto ctx = cohn_e_star();
  EXPECT_EQ((edge(ctx, "e3") * ghost(ctx, "e3")).to_string(), "v2 - e4 e4*");
  EXPECT_EQ((edge(ctx, "e1") * ghost(ctx, "e1")).to_string(), "e1 e1*");
}

TEST(Multiply, LeavittIdentity) {
  auto ctx = leavitt_e_star();
  auto p = edge(ctx, "e1") + edge(ctx, "e2");
  auto q = edge(ctx, "e3") + edge(ctx, "e4");
  EXPECT_EQ(star(p) * p, unit(ctx));
  EXPECT_EQ(star(p) * p * star(q) * q, unit(ctx));
  EXPECT_TRUE((star(p) * q).is_zero());
}

TEST(Normalize, Examples) {
  auto ctx = leavitt_e_star();
  const auto& g = ctx.graph();
  Letter e1{Letter::Kind::Edge, g.edge_index("e1")};
  Letter e2{Letter::Kind::Edge, g.edge_index("e2")};
  Letter e1s{Letter::Kind::Ghost, g.edge_index("e1")};
  Letter e2s{Letter::Kind::Ghost, g.edge_index("e2")};
  Letter v1{Letter::Kind::Vertex, g.vertex_index("v1")};
  Letter v2{Letter::Kind::Vertex, g.vertex_index("v2")};
  EXPECT_TRUE(normalize(ctx, {{Rational(1), {e1, v2}}}).is_zero());
  EXPECT_EQ(normalize(ctx, {{Rational(1), {v1, v1}}}).to_string(), "v1");
  EXPECT_EQ(normalize(ctx, {{Rational(1), {e1, e1s}}, {Rational(1), {e2, e2s}}}).to_string(), "v1");
}

TEST(Normalize, RelationFiveIsATheorem) {
  for (auto name : {"E_star", "E_star_star", "R3"}) {
    auto g = builtin(name);
    for (const auto& v : regular_vertices(g)) {
      AlgebraContext ctx(g, {v});
      auto sum = zero(ctx);
      for (EdgeId e : g.out_edges(g.vertex_index(v))) sum += edge(ctx, g.edge_name(e)) * ghost(ctx, g.edge_name(e));
      EXPECT_EQ(sum, vertex(ctx, v)) << name << " at " << v;
    }
  }
}

TEST(Normalize, IdempotentAndConfluent) {
  std::mt19937_64 rng(500);
  std::vector<AlgebraContext> contexts{AlgebraContext::leavitt(builtin("F_star")),
                                       AlgebraContext::leavitt(builtin("F_star_star")),
                                       AlgebraContext(builtin("E_star_star"), {"w2", "w3", "w4"})};
  for (int i = 0; i < 500; ++i) {
    const auto& ctx = contexts[static_cast<std::size_t>(i) % contexts.size()];
    Word w = random_word(rng, ctx.graph(), 8);
    auto left = normalize(ctx, {{Rational(1), w}}, RewriteStrategy::Leftmost);
    auto right = normalize(ctx, {{Rational(1), w}}, RewriteStrategy::Rightmost);
    ASSERT_EQ(left, right) << render(ctx, w);
    std::vector<WeightedWord> again;
    for (const auto& [m, c] : left.terms()) {
      EXPECT_TRUE(is_normal(ctx, m));
      again.push_back({c, to_word(m)});
    }
    EXPECT_EQ(normalize(ctx, again), left);
  }
}

TEST(RingAxioms, RandomElements) {
  std::mt19937_64 rng(77);
  for (auto ctx : {leavitt_e_star(), cohn_e_star(), AlgebraContext::leavitt(builtin("F_star"))}) {
    for (int i = 0; i < 40; ++i) {
      auto a = random_element(rng, ctx);
      auto b = random_element(rng, ctx);
      auto c = random_element(rng, ctx);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ(unit(ctx) * a, a);
      EXPECT_EQ(a * unit(ctx), a);
      EXPECT_TRUE((a - a).is_zero());
      EXPECT_EQ(star(star(a)), a);
      EXPECT_EQ(star(a * b), star(b) * star(a));
    }
  }
}

TEST(Render, CoefficientsAndOrder) {
  auto ctx = leavitt_e_star();
  EXPECT_EQ((Rational(-1, 2) * vertex(ctx, "v1") + Rational(2) * edge(ctx, "e1")).to_string(), "-1/2 v1 + 2 e1");
  EXPECT_EQ(zero(ctx).to_string(), "0");
  EXPECT_EQ(cohn_e_star().describe(), "C(E, {v2})");
  EXPECT_EQ(ctx.describe(), "L(E)");
}

TEST(SpecialEdges, LeastNameOutOfV) {
  auto ctx = cohn_e_star();
  const auto& g = ctx.graph();
  EXPECT_EQ(ctx.special_edge(g.vertex_index("v2")), g.edge_index("e3"));
  EXPECT_FALSE(ctx.special_edge(g.vertex_index("v1")).has_value());
}

TEST(Limits, ResourceGuard) {
  auto ctx = AlgebraContext::leavitt(Graph({"u"}, {{"a", "u", "u"}, {"b", "u", "u"}, {"c", "u", "u"}}));
  auto x = unit(ctx);
  for (auto e : {"a", "b", "c"}) x += edge(ctx, e) + ghost(ctx, e);
  EXPECT_THROW(
      {
        auto y = x;
        for (int i = 0; i < 12; ++i) y = y * x;
      },
      ResourceError);
}

TEST(BasisSoundness, CohnEStarLengthThree) {
  auto r = basis_soundness(builtin("E_star"), {"v2"}, 3, 4);
  EXPECT_EQ(r.rank, r.monomials);
  EXPECT_EQ(r.reached, r.monomials);
  EXPECT_TRUE(r.raw_words_stay_short);
}

TEST(Expression, PaperExamples) {
  auto ctx = leavitt_e_star();
  EXPECT_EQ(eval(ctx, "(e1 + e2)* (e1 + e2)"), "v1 + v2");
  EXPECT_EQ(eval(ctx, "(e1+e2)*(e1+e2)(e3+e4)*(e3+e4)"), "v1 + v2");
  EXPECT_EQ(eval(ctx, "e1* e2"), "0");
  EXPECT_EQ(eval(ctx, "e1 e1* + e2 e2*"), "v1");
  EXPECT_EQ(eval(cohn_e_star(), "e3 e3*"), "v2 - e4 e4*");
}

TEST(Expression, Scalars) {
  auto ctx = leavitt_e_star();
  EXPECT_EQ(eval(ctx, "1/2 v1 - 3 v1"), "-5/2 v1");
  EXPECT_EQ(eval(ctx, "-v1 + v1"), "0");
  EXPECT_EQ(eval(ctx, "2 (v1 + e1)"), "2 v1 + 2 e1");
  EXPECT_EQ(eval(ctx, "e1**"), "e1");
  EXPECT_EQ(eval(ctx, "1"), "v1 + v2");
}

TEST(Expression, Errors) {
  auto ctx = leavitt_e_star();
  auto column_of = [&](const std::string& text) -> std::size_t {
    try {
      evaluate_expression(ctx, text);
    } catch (const ExpressionError& e) {
      return e.column();
    }
    return 0;
  };
  EXPECT_EQ(column_of("(e1"), 1u);
  EXPECT_GT(column_of("e1)"), 0u);
  EXPECT_EQ(column_of("v1 + zz"), 6u);
  EXPECT_GT(column_of(""), 0u);
  EXPECT_GT(column_of("1/0"), 0u);
  EXPECT_GT(column_of("v1 +"), 0u);

  auto clash = AlgebraContext::leavitt(Graph({"x"}, {{"x", "x", "x"}, {"y", "x", "x"}}));
  EXPECT_THROW(evaluate_expression(clash, "x"), ExpressionError);
}
