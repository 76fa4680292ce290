#include "lpa/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <stdexcept>

#include "lpa/algebra.hpp"
#include "lpa/corpus.hpp"
#include "lpa/expression.hpp"
#include "lpa/families.hpp"
#include "lpa/graph_ops.hpp"
#include "lpa/invariants.hpp"
#include "lpa/k0.hpp"
#include "lpa/linalg.hpp"
#include "lpa/moves.hpp"
#include "lpa/oracles.hpp"

namespace lpa {

namespace {

// The double splice of the three-loop graph at u, drawn by hand.
Graph double_splice_example() {
  return Graph({"u", "w1", "w2", "w3", "w4"},
               {{"l1", "u", "u"},     {"l2", "u", "u"},     {"l3", "u", "u"},     {"f1", "w1", "w1"},
                {"f2", "w1", "w2"},   {"f3", "w2", "w1"},   {"f4", "w2", "w2"},   {"f5", "w1", "w3"},
                {"f6", "w3", "w1"},   {"f7", "w3", "w3"},   {"f8", "w3", "w4"},   {"f9", "w4", "w3"},
                {"f10", "w4", "w4"},  {"d1", "u", "w1"},    {"d2", "w1", "u"}});
}

// Tallies a property over a corpus and remembers the first counterexample.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}
  void record(bool ok, const std::function<std::string()>& describe) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (first_failure_.empty()) first_failure_ = describe();
  }
  Check finish() const {
    if (failed_ == 0) return make_check(name_, true, std::to_string(total_) + "/" + std::to_string(total_));
    return make_check(name_, false,
                      std::to_string(failed_) + " of " + std::to_string(total_) + " fail; first: " + first_failure_);
  }

 private:
  std::string name_;
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::string first_failure_;
};

struct Runner {
  const VerifyOptions& opt;

  Integer det(const Graph& g) const {
    Integer d = det_identity_minus_transpose(g);
    return opt.inject_sign_fault ? Integer(-d) : d;
  }

  Check det_equals(const std::string& label, const Graph& g, long expected) const {
    Integer d = det(g);
    return make_check("det(I - A^t) of " + label + " = " + std::to_string(expected), d == expected, d.get_str());
  }

  std::vector<Check> determinants() const {
    auto r3 = builtin("R3");
    return {det_equals("E_*", builtin("E_star"), -1), det_equals("E_**", builtin("E_star_star"), 1),
            det_equals("R3", r3, -2), det_equals("the Cuntz splice of R3 at u", cuntz_splice(r3, "u"), 2)};
  }

  static Check pointed_render(const std::string& label, const std::string& name, const std::string& expected) {
    std::string got = render(k0_presentation(builtin(name)).group);
    return make_check("K0 of " + label + " is " + expected, got == expected, got);
  }

  std::vector<Check> k0_groups() const {
    return {pointed_render("E_*", "E_star", "Z^0 ; unit=()"), pointed_render("E_**", "E_star_star", "Z^0 ; unit=()"),
            pointed_render("R3", "R3", "Z/2 ; unit=(1)")};
  }

  std::vector<Check> graph_shapes() const {
    std::vector<Check> out;
    auto es = builtin("E_star");
    auto ess = builtin("E_star_star");
    out.push_back(make_check("Cuntz splice of E_* at v1 is isomorphic to E_**",
                             graph_isomorphic(cuntz_splice(es, "v1"), ess).has_value()));
    out.push_back(make_check("Cohn graph of E_* at {v2} equals F_*", cohn_graph(es, {"v2"}) == builtin("F_star")));
    out.push_back(make_check("Cohn graph of E_** at {w2,w3,w4} equals F_**",
                             cohn_graph(ess, {"w2", "w3", "w4"}) == builtin("F_star_star")));
    out.push_back(make_check("F_** is not isomorphic to the Cuntz splice of F_* at v1",
                             !graph_isomorphic(builtin("F_star_star"), cuntz_splice(builtin("F_star"), "v1"))));
    return out;
  }

  std::vector<Check> double_splice() const {
    auto r3 = builtin("R3");
    auto d = double_cuntz_splice(r3, "u");
    auto once = cuntz_splice_detailed(r3, "u");
    auto twice = cuntz_splice(once.graph, once.attached);
    return {
        make_check("double splice of R3 at u equals the hand-drawn graph", d == double_splice_example()),
        make_check("double splice is isomorphic to splicing at u then at the new v1",
                   graph_isomorphic(d, twice).has_value()),
        make_check("double splice keeps det(I - A^t) = -2", det(d) == -2, det(d).get_str()),
    };
  }

  std::vector<Check> moves() const {
    auto corpus = random_spi_corpus(opt.seed, 50, 6);
    Tally negated("splice negates det(I - A^t)");
    Tally factors("splice preserves the K0 invariant factors");
    Tally dpreserved("double splice preserves det(I - A^t)");
    Tally dfactors("double splice preserves the K0 invariant factors");
    Tally iterated("double splice is isomorphic to the iterated splice");
    Tally pointed("add_source(cuntz_splice(g, u), u) has the pointed K0 of g");
    Tally reports("move reports pass their relation checks");
    for (const auto& g : corpus) {
      const std::string u = *find_splice_vertex(g);
      auto show = [&] { return render_graph(g) + " at " + u; };
      auto s = cuntz_splice_detailed(g, u);
      auto d = double_cuntz_splice(g, u);
      auto gi = k0_presentation(g).group;
      negated.record(det(s.graph) == -det(g), show);
      factors.record(k0_presentation(s.graph).group.same_group(gi), show);
      dpreserved.record(det(d) == det(g), show);
      dfactors.record(k0_presentation(d).group.same_group(gi), show);
      iterated.record(graph_isomorphic(d, cuntz_splice(s.graph, s.attached)).has_value(), show);

      auto with_source = add_source(s.graph, u);
      std::map<std::string, Integer> unit_difference;
      for (const auto& v : g.vertices()) unit_difference[v] += 1;
      for (const auto& v : with_source.vertices()) unit_difference[v] -= 1;
      pointed.record(natural_k0_map(g, with_source).iso() && k0_vanishes(with_source, unit_difference), show);

      bool ok = true;
      for (auto m : {MoveKind::CuntzSplice, MoveKind::DoubleCuntzSplice, MoveKind::AddSource})
        ok = ok && apply_move_with_report(g, m, {u, {}}).ok();
      reports.record(ok, show);
    }
    auto r3 = builtin("R3");
    std::string before = render(k0_presentation(r3).group);
    std::string after = render(k0_presentation(cuntz_splice(r3, "u")).group);
    return {negated.finish(),
            factors.finish(),
            dpreserved.finish(),
            dfactors.finish(),
            iterated.finish(),
            pointed.finish(),
            reports.finish(),
            make_check("splicing R3 moves the unit class from 1 to 0 in Z/2",
                       before == "Z/2 ; unit=(1)" && after == "Z/2 ; unit=(0)", before + " -> " + after)};
  }

  static Check family_check(const std::string& label, const FamilyImages& im) {
    auto report = check_relative_family(im);
    std::string details;
    for (const auto& c : report.checks)
      if (!c.passed()) details += c.name + ": " + c.details + "; ";
    return make_check(label, report.passed(), details);
  }

  std::vector<Check> cohn_family() const {
    std::vector<Check> out;
    auto a = cohn_isomorphism_images(builtin("E_star"), {"v2"});
    auto b = cohn_isomorphism_images(builtin("E_star_star"), {"w2", "w3", "w4"});
    out.push_back(family_check("images of C(E_*, {v2}) in L(F_*) satisfy the relations", a));
    out.push_back(family_check("images of C(E_**, {w2,w3,w4}) in L(F_**) satisfy the relations", b));
    out.push_back(make_check("target of the first family is L(F_*)", a.target.graph() == builtin("F_star")));
    out.push_back(make_check("target of the second family is L(F_**)", b.target.graph() == builtin("F_star_star")));
    for (const auto& [label, im] : {std::pair{"F_*", &a}, std::pair{"F_**", &b}}) {
      auto phi = VerifiedHomomorphism::verify(*im);
      auto one = induced_map_apply(phi, unit(im->source));
      out.push_back(make_check(std::string("the induced map sends 1 to 1 in L(") + label + ")",
                               one == unit(im->target), one.to_string()));
    }
    return out;
  }

  std::vector<Check> endomorphism() const {
    auto ctx = AlgebraContext::leavitt(builtin("E_star"));
    auto p = evaluate_expression(ctx, "e1 + e2");
    auto q = evaluate_expression(ctx, "e3 + e4");
    auto result = conjugation_pair_endomorphism(ctx, p, q);
    std::vector<Check> out = result.preconditions;
    out.push_back(family_check("x -> p x p* + q x q* satisfies the Leavitt relations", result.images));
    auto phi = VerifiedHomomorphism::verify(result.images);
    auto one = induced_map_apply(phi, unit(ctx));
    out.push_back(make_check("phi(1) = 1", one == unit(ctx), one.to_string()));
    auto identity = evaluate_expression(ctx, "(e1+e2)* (e1+e2) (e3+e4)* (e3+e4)");
    out.push_back(make_check("(e1+e2)* (e1+e2) (e3+e4)* (e3+e4) = 1", identity == unit(ctx), identity.to_string()));
    bool rejected = false;
    try {
      conjugation_pair_endomorphism(ctx, unit(ctx), unit(ctx));
    } catch (const PreconditionError& e) {
      rejected = std::string(e.what()).find("p* q") != std::string::npos;
    }
    out.push_back(make_check("p = q = 1 is rejected at p* q = 0", rejected));
    return out;
  }

  std::vector<Check> witnesses() const {
    auto ctx = AlgebraContext::leavitt(builtin("E_star"));
    auto x = [&](const char* s) { return evaluate_expression(ctx, s); };
    std::vector<Check> out;
    auto tagged = [&](const std::string& tag, const std::vector<Check>& cs) {
      for (auto c : cs) {
        c.name = tag + ": " + c.name;
        out.push_back(std::move(c));
      }
    };

    auto m1 = mvn_witnesses(x("e1 e1* + e4 e4*"), unit(ctx), x("e1 + e4"), x("(e1 + e4)*"));
    tagged("e1 e1* + e4 e4* ~ 1", m1.checks);
    auto m2 = mvn_witnesses(x("v1"), x("v1"), x("v1"), x("v1"));
    tagged("v1 ~ v1", m2.checks);
    out.push_back(make_check("v1 ~ v1: x = y = v1", m2.x == x("v1") && m2.y == x("v1")));
    auto u = x("e1 e3* + e2 e4*");
    auto m3 = mvn_witnesses(x("v1"), x("v2"), u, star(u));
    tagged("v1 ~ v2", m3.checks);
    out.push_back(make_check("v1 ~ v2: x = u, y = u*", m3.x == u && m3.y == star(u)));

    auto one = unit(ctx);
    auto c1 = assemble_conjugator(ctx, {{one, one, one, one}});
    tagged("single trivial pair", c1.checks);
    out.push_back(make_check("single trivial pair: a = b = 1", c1.a == one && c1.b == one));
    auto c2 = assemble_conjugator(ctx, {{u, star(u), x("v1"), x("v2")}, {star(u), u, x("v2"), x("v1")}});
    tagged("swap of v1 and v2", c2.checks);
    out.push_back(make_check("u u = 0 and u u* = v1", u * u == zero(ctx) && u * star(u) == x("v1")));

    bool rejected = false;
    try {
      assemble_conjugator(ctx, {{x("v1"), x("v1"), x("v1"), x("v1")}, {x("v1"), x("v1"), x("v1"), x("v1")}});
    } catch (const PreconditionError& e) {
      rejected = std::string(e.what()).find("orthogonality") != std::string::npos;
    }
    out.push_back(make_check("e_1 = e_2 = v1 is rejected for orthogonality", rejected));
    return out;
  }

  // ---- property suites ----

  static Word random_word(std::mt19937_64& rng, const Graph& g, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    std::size_t len = len_dist(rng);
    Word w;
    if (rng() % 2 == 0) {
      std::uniform_int_distribution<std::size_t> pick(0, g.vertex_count() + 2 * g.edge_count() - 1);
      for (std::size_t i = 0; i < len; ++i) {
        std::size_t k = pick(rng);
        if (k < g.vertex_count()) {
          w.push_back({Letter::Kind::Vertex, k});
        } else {
          k -= g.vertex_count();
          w.push_back({k % 2 ? Letter::Kind::Ghost : Letter::Kind::Edge, k / 2});
        }
      }
      return w;
    }
    // A walk: every adjacent pair composes, so relations rather than zeros do the work.
    VertexId at = rng() % g.vertex_count();
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<Letter> options{{Letter::Kind::Vertex, at}};
      for (EdgeId e : g.out_edges(at)) options.push_back({Letter::Kind::Edge, e});
      for (EdgeId e : g.in_edges(at)) options.push_back({Letter::Kind::Ghost, e});
      Letter l = options[rng() % options.size()];
      w.push_back(l);
      if (l.kind == Letter::Kind::Edge) at = g.range(l.index);
      if (l.kind == Letter::Kind::Ghost) at = g.source(l.index);
    }
    return w;
  }

  static AlgebraElement random_element(std::mt19937_64& rng, const AlgebraContext& ctx) {
    AlgebraElement x(ctx);
    std::size_t terms = 1 + rng() % 3;
    for (std::size_t i = 0; i < terms; ++i) {
      Rational c(mpz_class(static_cast<long>(rng() % 7) - 3), mpz_class(static_cast<long>(1 + rng() % 2)));
      c.canonicalize();
      x += normalize(ctx, {{c, random_word(rng, ctx.graph(), 4)}});
    }
    return x;
  }

  static Word concat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  std::vector<Check> properties() const {
    std::mt19937_64 rng(opt.seed);
    std::vector<Check> out;
    std::vector<AlgebraContext> word_contexts{AlgebraContext::leavitt(builtin("F_star")),
                                              AlgebraContext::leavitt(builtin("F_star_star"))};

    Tally idempotent("normalizing a normal form changes nothing");
    Tally confluent("leftmost and rightmost rewriting agree");
    Tally product("rewriting a concatenated word equals multiplying the normal forms");
    for (const auto& ctx : word_contexts) {
      for (int i = 0; i < 500; ++i) {
        Word w = random_word(rng, ctx.graph(), 8);
        auto show = [&] { return render(ctx, w); };
        auto left = normalize(ctx, {{Rational(1), w}}, RewriteStrategy::Leftmost);
        auto right = normalize(ctx, {{Rational(1), w}}, RewriteStrategy::Rightmost);
        confluent.record(left == right, show);
        std::vector<WeightedWord> again;
        for (const auto& [m, c] : left.terms()) again.push_back({c, to_word(m)});
        idempotent.record(normalize(ctx, again) == left, show);
        std::size_t cut = w.empty() ? 0 : rng() % (w.size() + 1);
        Word a(w.begin(), w.begin() + cut), b(w.begin() + cut, w.end());
        product.record(normalize(ctx, {{Rational(1), a}}) * normalize(ctx, {{Rational(1), b}}) == left, show);
      }
    }
    out.push_back(idempotent.finish());
    out.push_back(confluent.finish());
    out.push_back(product.finish());

    std::vector<AlgebraContext> ring_contexts{word_contexts[0], word_contexts[1],
                                              AlgebraContext(builtin("E_star"), {"v2"}),
                                              AlgebraContext(builtin("E_star_star"), {"w2", "w3", "w4"})};
    Tally ring("associativity, distributivity and the unit");
    Tally involution("star(star x) = x and star(x y) = star(y) star(x)");
    for (const auto& ctx : ring_contexts) {
      for (int i = 0; i < 60; ++i) {
        auto a = random_element(rng, ctx);
        auto b = random_element(rng, ctx);
        auto c = random_element(rng, ctx);
        auto show = [&] { return a.to_string() + " | " + b.to_string() + " | " + c.to_string(); };
        auto one = unit(ctx);
        ring.record((a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && (a + b) * c == a * c + b * c &&
                        one * a == a && a * one == a,
                    show);
        involution.record(star(star(a)) == a && star(a * b) == star(b) * star(a), show);
      }
    }
    out.push_back(ring.finish());
    out.push_back(involution.finish());

    Tally summation("sum of e e* over s(e) = v normalizes to v for v in V");
    for (const auto& ctx : ring_contexts) {
      const Graph& g = ctx.graph();
      for (const auto& v : ctx.complete_at()) {
        std::vector<WeightedWord> words;
        for (EdgeId e : g.out_edges(g.vertex_index(v)))
          words.push_back({Rational(1), {{Letter::Kind::Edge, e}, {Letter::Kind::Ghost, e}}});
        summation.record(normalize(ctx, words) == vertex(ctx, v), [&] { return v; });
      }
    }
    out.push_back(summation.finish());

    auto basis = basis_soundness(builtin("E_star"), {"v2"}, 3, 4);
    out.push_back(make_check("normal forms of length <= 3 in C(E_*, {v2}) are linearly independent",
                             basis.rank == basis.monomials,
                             "rank " + std::to_string(basis.rank) + " of " + std::to_string(basis.monomials)));
    out.push_back(make_check("raw words of length <= 3 in C(E_*, {v2}) span exactly those normal forms",
                             basis.raw_words_stay_short && basis.reached == basis.monomials,
                             std::to_string(basis.reached) + " reached"));

    Tally smith("U A V = S with U, V unimodular and a divisibility chain");
    std::uniform_int_distribution<int> dim(1, 6);
    std::uniform_int_distribution<long> entry(-9, 9);
    for (int i = 0; i < 200; ++i) {
      IntMatrix a(dim(rng), dim(rng));
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = entry(rng);
      auto snf = smith_normal_form(a);
      auto d = snf.diagonal();
      bool ok = snf.u * a * snf.v == snf.s && snf.s.is_diagonal() && abs(determinant(snf.u)) == 1 &&
                abs(determinant(snf.v)) == 1;
      for (std::size_t k = 0; k < d.size(); ++k) {
        if (d[k] < 0) ok = false;
        if (k + 1 < d.size() && !(d[k + 1] == 0 || (d[k] != 0 && d[k + 1] % d[k] == 0))) ok = false;
      }
      smith.record(ok, [&] { return a.to_string(); });
    }
    out.push_back(smith.finish());

    Tally spi("is_spi agrees with the hereditary-saturated definition");
    for (int i = 0; i < 400; ++i) {
      Graph g = random_graph(rng, 5, i % 2 ? 1 : 2);
      spi.record(is_spi(g).is_spi == spi_by_hereditary_saturated(g), [&] { return render_graph(g); });
    }
    out.push_back(spi.finish());
    return out;
  }

  std::vector<Check> trivial_k_theory() const {
    std::mt19937_64 rng(opt.seed + 1);
    std::vector<Graph> corpus{builtin("E_star"), builtin("E_star_star"), builtin("R3")};
    while (corpus.size() < 200) {
      Graph g = random_graph(rng, 5, 1 + corpus.size() % 2);
      if (!g.has_sinks()) corpus.push_back(std::move(g));
    }
    Tally agree("has_trivial_k_theory agrees with the Smith form and with det = +-1");
    for (const auto& g : corpus) {
      auto m = identity_minus_transpose(adjacency_matrix(g));
      bool all_one = true;
      for (const auto& d : smith_normal_form(m).diagonal())
        if (d != 1) all_one = false;
      bool unit_det = abs(det(g)) == 1;
      bool trivial = has_trivial_k_theory(g);
      agree.record(trivial == all_one && trivial == unit_det, [&] { return render_graph(g); });
    }
    bool refused = false;
    try {
      has_trivial_k_theory(builtin("F_star"));
    } catch (const KTheoryError&) {
      refused = true;
    }
    return {agree.finish(), make_check("graphs with sinks are refused", refused)};
  }
};

struct BlockSpec {
  const char* name;
  const char* title;
  std::vector<Check> (Runner::*run)() const;
};

const std::vector<BlockSpec>& blocks() {
  static const std::vector<BlockSpec> all = {
      {"determinants", "det(I - A^t) of the basic graphs", &Runner::determinants},
      {"k0-groups", "pointed K0 of the basic graphs", &Runner::k0_groups},
      {"cohn-k0", "K0 class equations in the Cohn-graph algebras", nullptr},
      {"graph-shapes", "splice and Cohn graph shapes", &Runner::graph_shapes},
      {"double-splice", "double Cuntz splice of R3", &Runner::double_splice},
      {"moves", "move invariants on random SPI graphs", &Runner::moves},
      {"cohn-family", "relative Cohn to Leavitt relation families", &Runner::cohn_family},
      {"endomorphism", "the endomorphism x -> p x p* + q x q* of L(E_*)", &Runner::endomorphism},
      {"witnesses", "Murray-von Neumann witnesses and conjugators", &Runner::witnesses},
      {"properties", "rewriting, ring, basis, Smith form and SPI property suites", &Runner::properties},
      {"trivial-k-theory", "trivial K-theory test on sink-free graphs", &Runner::trivial_k_theory},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& verification_block_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& b : blocks()) out.push_back(b.name);
    return out;
  }();
  return names;
}

std::vector<VerificationBlock> run_verification(const VerifyOptions& options) {
  if (!options.filter.empty()) {
    const auto& names = verification_block_names();
    if (std::find(names.begin(), names.end(), options.filter) == names.end()) {
      throw std::invalid_argument("unknown verification block '" + options.filter + "'");
    }
  }
  Runner runner{options};
  std::vector<VerificationBlock> out;
  for (const auto& spec : blocks()) {
    if (!options.filter.empty() && options.filter != spec.name) continue;
    VerificationBlock block{spec.name, spec.title, {}, 0};
    auto start = std::chrono::steady_clock::now();
    try {
      block.checks = spec.run ? (runner.*spec.run)() : verify_cohn_k0_classes();
    } catch (const std::exception& e) {
      block.checks.push_back(make_check("block ran to completion", false, e.what()));
    }
    block.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(block));
  }
  return out;
}

}  // namespace lpa
