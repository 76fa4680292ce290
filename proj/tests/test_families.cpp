#include <gtest/gtest.h>

#include "lpa/expression.hpp"
#include "lpa/families.hpp"
#include "lpa/graph.hpp"

using namespace lpa;

namespace {

AlgebraElement x_of(const AlgebraContext& ctx, const std::string& text) { return evaluate_expression(ctx, text); }

}  // namespace

TEST(Family, CohnGraphIsomorphismImages) {
  auto images = cohn_isomorphism_images(builtin("E_star"), {"v2"});
  EXPECT_EQ(images.vertices.at("v1").to_string(), "v1 + v1'");
  EXPECT_EQ(images.edges.at("e1").to_string(), "e1 + e1'");
  EXPECT_EQ(images.edges.at("e2").to_string(), "e2");
  EXPECT_TRUE(check_relative_family(images).passed());

  auto phi = VerifiedHomomorphism::verify(images);
  auto source_one = unit(images.source);
  EXPECT_EQ(induced_map_apply(phi, source_one), unit(images.target));
  EXPECT_EQ(induced_map_apply(phi, source_one).to_string(), "v1 + v2 + v1'");

  auto big = cohn_isomorphism_images(builtin("E_star_star"), {"w2", "w3", "w4"});
  EXPECT_TRUE(check_relative_family(big).passed());
  EXPECT_EQ(induced_map_apply(VerifiedHomomorphism::verify(big), unit(big.source)), unit(big.target));
}

TEST(Family, IdentityMap) {
  auto ctx = AlgebraContext::leavitt(builtin("E_star"));
  auto id = identity_homomorphism(ctx);
  EXPECT_TRUE(id.report().passed());
  auto x = x_of(ctx, "e1 e3* + 2 e4* - 1/3 v2");
  EXPECT_EQ(induced_map_apply(id, x), x);
}

TEST(Family, BrokenImagesAreRejected) {
  auto ctx = AlgebraContext::leavitt(builtin("E_star"));
  std::map<std::string, AlgebraElement> vertices{{"v1", vertex(ctx, "v1")}, {"v2", vertex(ctx, "v2")}};
  std::map<std::string, AlgebraElement> edges;
  for (auto e : {"e1", "e2", "e3", "e4"}) edges.emplace(e, edge(ctx, e));
  edges.at("e2") = edge(ctx, "e1");
  auto images = images_with_star_ghosts(ctx, ctx, vertices, edges);
  EXPECT_FALSE(check_relative_family(images).passed());
  EXPECT_THROW(VerifiedHomomorphism::verify(images), PreconditionError);
}

TEST(Endomorphism, ConjugationPair) {
  auto ctx = AlgebraContext::leavitt(builtin("E_star"));
  auto p = x_of(ctx, "e1 + e2");
  auto q = x_of(ctx, "e3 + e4");
  EXPECT_TRUE((star(p) * q).is_zero());
  auto r = conjugation_pair_endomorphism(ctx, p, q);
  EXPECT_TRUE(all_passed(r.preconditions));
  EXPECT_TRUE(check_relative_family(r.images).passed());
  auto phi = VerifiedHomomorphism::verify(r.images);
  EXPECT_EQ(induced_map_apply(phi, unit(ctx)), unit(ctx));
}

TEST(Endomorphism, OrthogonalityPreconditionNamed) {
  auto ctx = AlgebraContext::leavitt(builtin("E_star"));
  try {
    conjugation_pair_endomorphism(ctx, unit(ctx), unit(ctx));
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("p* q"), std::string::npos) << e.what();
  }
}

TEST(Witnesses, MurrayVonNeumann) {
  auto ctx = AlgebraContext::leavitt(builtin("E_star"));
  auto v = x_of(ctx, "e1 + e4");
  auto r = mvn_witnesses(x_of(ctx, "e1 e1* + e4 e4*"), unit(ctx), v, star(v));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks.size(), 6u);

  auto v1 = vertex(ctx, "v1");
  auto same = mvn_witnesses(v1, v1, v1, v1);
  EXPECT_TRUE(same.passed());
  EXPECT_EQ(same.x, v1);
  EXPECT_EQ(same.y, v1);

  auto u = x_of(ctx, "e1 e3* + e2 e4*");
  auto swap = mvn_witnesses(v1, vertex(ctx, "v2"), u, star(u));
  EXPECT_TRUE(swap.passed());
  EXPECT_EQ(swap.x, u);
  EXPECT_EQ(swap.y, star(u));

  EXPECT_THROW(mvn_witnesses(v1, v1, u, star(u)), PreconditionError);
}

TEST(Witnesses, Conjugator) {
  auto ctx = AlgebraContext::leavitt(builtin("E_star"));
  auto one = unit(ctx);
  auto trivial = assemble_conjugator(ctx, {{one, one, one, one}});
  EXPECT_TRUE(trivial.passed());
  EXPECT_EQ(trivial.a, one);
  EXPECT_EQ(trivial.b, one);

  auto u = x_of(ctx, "e1 e3* + e2 e4*");
  auto v1 = vertex(ctx, "v1");
  auto v2 = vertex(ctx, "v2");
  EXPECT_TRUE((u * u).is_zero());
  auto swap = assemble_conjugator(ctx, {{u, star(u), v1, v2}, {star(u), u, v2, v1}});
  EXPECT_TRUE(swap.passed());
  EXPECT_EQ(swap.a * swap.b, one);
  EXPECT_EQ(swap.b * v1 * swap.a, v2);

  try {
    assemble_conjugator(ctx, {{v1, v1, v1, v1}, {v1, v1, v1, v1}});
    FAIL() << "expected an orthogonality error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("orthogonality"), std::string::npos) << e.what();
  }
}

TEST(CohnK0, ClassesOfTheUnit) {
  auto checks = verify_cohn_k0_classes();
  EXPECT_FALSE(checks.empty());
  for (const auto& c : checks) EXPECT_EQ(c.status, CheckStatus::Pass) << c.name << " " << c.details;
}
