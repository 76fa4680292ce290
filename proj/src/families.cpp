#include "lpa/families.hpp"

#include "lpa/k0.hpp"
#include "lpa/moves.hpp"

namespace lpa {

namespace {

// Collects the failing instances of one relation family.
class InstanceLog {
 public:
  explicit InstanceLog(std::string name) : name_(std::move(name)) {}

  void record(bool ok, const std::string& instance) {
    ++total_;
    if (!ok) failures_.push_back(instance);
  }

  Check finish() const {
    if (failures_.empty()) return make_check(name_, true, std::to_string(total_) + " instances");
    std::string details = std::to_string(failures_.size()) + " of " + std::to_string(total_) + " fail:";
    for (const auto& f : failures_) details += " " + f + ";";
    details.pop_back();
    return make_check(name_, false, details);
  }

 private:
  std::string name_;
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
};

std::string missing_generators(const FamilyImages& im) {
  const Graph& g = im.source.graph();
  std::string missing;
  auto note = [&](const std::string& s) { missing += (missing.empty() ? "" : ", ") + s; };
  for (const auto& v : g.vertices())
    if (!im.vertices.count(v)) note(v);
  for (const auto& e : g.edges()) {
    if (!im.edges.count(e.id)) note(e.id);
    if (!im.ghosts.count(e.id)) note(e.id + "*");
  }
  return missing;
}

bool all_in_target(const FamilyImages& im) {
  for (const auto* m : {&im.vertices, &im.edges, &im.ghosts})
    for (const auto& [name, x] : *m)
      if (!(x.context() == im.target)) return false;
  return true;
}

}  // namespace

FamilyImages images_with_star_ghosts(const AlgebraContext& source, const AlgebraContext& target,
                                     std::map<std::string, AlgebraElement> vertices,
                                     std::map<std::string, AlgebraElement> edges) {
  FamilyImages im{source, target, std::move(vertices), std::move(edges), {}};
  for (const auto& [name, x] : im.edges) im.ghosts.emplace(name, star(x));
  return im;
}

FamilyReport check_relative_family(const FamilyImages& im) {
  FamilyReport report;
  std::string missing = missing_generators(im);
  report.checks.push_back(make_check("every generator has an image", missing.empty(),
                                     missing.empty() ? "" : "missing: " + missing));
  bool same_target = all_in_target(im);
  report.checks.push_back(make_check("images lie in the target algebra", same_target));
  if (!missing.empty() || !same_target) return report;

  const Graph& g = im.source.graph();
  const auto& V = im.vertices;
  const auto& E = im.edges;
  const auto& G = im.ghosts;
  auto zero_t = zero(im.target);

  InstanceLog vv("v w = delta(v,w) v");
  for (const auto& v : g.vertices()) {
    for (const auto& w : g.vertices()) {
      vv.record(V.at(v) * V.at(w) == (v == w ? V.at(v) : zero_t), v + " " + w);
    }
  }
  report.checks.push_back(vv.finish());

  InstanceLog ee("s(e) e = e r(e) = e");
  InstanceLog gg("r(e) e* = e* s(e) = e*");
  for (const auto& e : g.edges()) {
    const auto& x = E.at(e.id);
    const auto& xs = G.at(e.id);
    ee.record(V.at(e.source) * x == x, e.source + " " + e.id);
    ee.record(x * V.at(e.range) == x, e.id + " " + e.range);
    gg.record(V.at(e.range) * xs == xs, e.range + " " + e.id + "*");
    gg.record(xs * V.at(e.source) == xs, e.id + "* " + e.source);
  }
  report.checks.push_back(ee.finish());
  report.checks.push_back(gg.finish());

  InstanceLog gf("e* f = delta(e,f) r(e)");
  for (const auto& e : g.edges()) {
    for (const auto& f : g.edges()) {
      gf.record(G.at(e.id) * E.at(f.id) == (e.id == f.id ? V.at(e.range) : zero_t), e.id + "* " + f.id);
    }
  }
  report.checks.push_back(gf.finish());

  InstanceLog sum("v = sum over s(e) = v of e e*");
  for (const auto& v : im.source.complete_at()) {
    auto total = zero(im.target);
    for (EdgeId e : g.out_edges(g.vertex_index(v))) total += E.at(g.edge_name(e)) * G.at(g.edge_name(e));
    sum.record(total == V.at(v), v);
  }
  report.checks.push_back(sum.finish());
  return report;
}

VerifiedHomomorphism VerifiedHomomorphism::verify(FamilyImages images) {
  FamilyReport report = check_relative_family(images);
  if (!report.passed()) {
    std::string msg = "generator images do not satisfy the relations:";
    for (const auto& c : report.checks)
      if (c.status == CheckStatus::Fail) msg += " [" + c.name + ": " + c.details + "]";
    throw PreconditionError(msg);
  }
  return VerifiedHomomorphism(std::move(images), std::move(report));
}

AlgebraElement induced_map_apply(const VerifiedHomomorphism& phi, const AlgebraElement& x) {
  const FamilyImages& im = phi.images();
  if (!(x.context() == im.source)) throw AlgebraError("element does not belong to the source algebra");
  const Graph& g = im.source.graph();
  AlgebraElement out = zero(im.target);
  for (const auto& [m, c] : x.terms()) {
    if (m.is_vertex()) {
      out += c * im.vertices.at(g.vertex_name(m.base));
      continue;
    }
    std::optional<AlgebraElement> prod;
    auto times = [&](const AlgebraElement& y) { prod = prod ? *prod * y : y; };
    for (EdgeId e : m.alpha) times(im.edges.at(g.edge_name(e)));
    for (auto it = m.beta.rbegin(); it != m.beta.rend(); ++it) times(im.ghosts.at(g.edge_name(*it)));
    out += c * *prod;
  }
  return out;
}

VerifiedHomomorphism identity_homomorphism(const AlgebraContext& ctx) {
  std::map<std::string, AlgebraElement> vs, es;
  for (const auto& v : ctx.graph().vertices()) vs.emplace(v, vertex(ctx, v));
  for (const auto& e : ctx.graph().edges()) es.emplace(e.id, edge(ctx, e.id));
  return VerifiedHomomorphism::verify(images_with_star_ghosts(ctx, ctx, std::move(vs), std::move(es)));
}

FamilyImages cohn_isomorphism_images(const Graph& g, const std::set<std::string>& complete_at) {
  AlgebraContext source(g, complete_at);
  auto cohn = cohn_graph_detailed(g, complete_at);
  AlgebraContext target = AlgebraContext::leavitt(cohn.graph);
  std::map<std::string, AlgebraElement> vs, es;
  for (const auto& v : g.vertices()) {
    auto img = vertex(target, v);
    if (auto it = cohn.primed_vertices.find(v); it != cohn.primed_vertices.end()) img += vertex(target, it->second);
    vs.emplace(v, img);
  }
  for (const auto& e : g.edges()) {
    auto img = edge(target, e.id);
    if (auto it = cohn.primed_edges.find(e.id); it != cohn.primed_edges.end()) img += edge(target, it->second);
    es.emplace(e.id, img);
  }
  return images_with_star_ghosts(source, target, std::move(vs), std::move(es));
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

void require_context(const AlgebraContext& ctx, std::initializer_list<const AlgebraElement*> xs) {
  for (const auto* x : xs)
    if (!(x->context() == ctx)) throw AlgebraError("elements belong to different algebras");
}

}  // namespace

EndomorphismResult conjugation_pair_endomorphism(const AlgebraContext& ctx, const AlgebraElement& p,
                                                 const AlgebraElement& q) {
  require_context(ctx, {&p, &q});
  const auto one = unit(ctx);
  const auto nil = zero(ctx);
  struct Product {
    std::string name;
    AlgebraElement value;
    const AlgebraElement& expected;
  };
  std::vector<Product> products = {
      {"p* p", star(p) * p, one},
      {"q* q", star(q) * q, one},
      {"p* q", star(p) * q, nil},
      {"q* p", star(q) * p, nil},
  };
  EndomorphismResult result{{}, FamilyImages{ctx, ctx, {}, {}, {}}};
  for (const auto& pr : products) {
    bool ok = pr.value == pr.expected;
    std::string want = pr.expected.to_string();
    result.preconditions.push_back(make_check(pr.name + " = " + want, ok, pr.value.to_string()));
    require(ok, pr.name + " = " + pr.value.to_string() + ", expected " + want);
  }
  const auto ps = star(p);
  const auto qs = star(q);
  auto phi = [&](const AlgebraElement& x) { return p * x * ps + q * x * qs; };
  for (const auto& v : ctx.graph().vertices()) result.images.vertices.emplace(v, phi(vertex(ctx, v)));
  for (const auto& e : ctx.graph().edges()) {
    result.images.edges.emplace(e.id, phi(edge(ctx, e.id)));
    result.images.ghosts.emplace(e.id, phi(ghost(ctx, e.id)));
  }
  return result;
}

MvnResult mvn_witnesses(const AlgebraElement& e, const AlgebraElement& f, const AlgebraElement& v,
                        const AlgebraElement& w) {
  require_context(e.context(), {&f, &v, &w});
  require(e * e == e, "e is not idempotent");
  require(f * f == f, "f is not idempotent");
  require(v * w == e, "e != v w");
  require(w * v == f, "w v != f");
  AlgebraElement x = e * v * f;
  AlgebraElement y = f * w * e;
  MvnResult r{x, y, {}};
  r.checks.push_back(make_check("x y = e", x * y == e));
  r.checks.push_back(make_check("y x = f", y * x == f));
  r.checks.push_back(make_check("x = e x = x f", e * x == x && x * f == x));
  r.checks.push_back(make_check("y = f y = y e", f * y == y && y * e == y));
  r.checks.push_back(make_check("x y x = x", x * y * x == x));
  r.checks.push_back(make_check("y x y = y", y * x * y == y));
  return r;
}

ConjugatorResult assemble_conjugator(const AlgebraContext& ctx, const std::vector<EquivalencePair>& pairs) {
  require(!pairs.empty(), "no pairs given");
  const auto one = unit(ctx);
  const auto nil = zero(ctx);
  auto sum_e = zero(ctx);
  auto sum_f = zero(ctx);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y, e, f] = pairs[i];
    require_context(ctx, {&x, &y, &e, &f});
    const std::string tag = "pair " + std::to_string(i + 1) + ": ";
    require(e * e == e, tag + "e is not idempotent");
    require(f * f == f, tag + "f is not idempotent");
    require(x * y == e, tag + "x y != e");
    require(y * x == f, tag + "y x != f");
    require(e * x == x && x * f == x, tag + "x != e x f");
    require(f * y == y && y * e == y, tag + "y != f y e");
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (j == i) continue;
      require(e * pairs[j].e == nil, "orthogonality fails: e_" + std::to_string(i + 1) + " e_" +
                                         std::to_string(j + 1) + " != 0");
      require(f * pairs[j].f == nil, "orthogonality fails: f_" + std::to_string(i + 1) + " f_" +
                                         std::to_string(j + 1) + " != 0");
    }
    sum_e += e;
    sum_f += f;
  }
  require(sum_e == one, "the e_i do not sum to 1");
  require(sum_f == one, "the f_i do not sum to 1");

  ConjugatorResult r{zero(ctx), zero(ctx), {}};
  for (const auto& p : pairs) {
    r.a += p.x;
    r.b += p.y;
  }
  r.checks.push_back(make_check("a b = 1", r.a * r.b == one));
  r.checks.push_back(make_check("b a = 1", r.b * r.a == one));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto conj = r.b * pairs[k].e * r.a;
    r.checks.push_back(make_check("b e_" + std::to_string(k + 1) + " a = f_" + std::to_string(k + 1),
                                  conj == pairs[k].f, conj.to_string()));
  }
  return r;
}

namespace {

// Value of x in Z after sending the sink class to 1. Requires K0 = Z.
Integer in_sink_units(const PointedAbelianGroup& grp, const K0Element& sink, const K0Element& x) {
  if (grp.free_rank != 1 || !grp.invariant_factors.empty()) throw KTheoryError("expected K0 = Z");
  return x.coords[0] * sink.coords[0];  // sink class is a generator, so +-1
}

}  // namespace

std::vector<Check> verify_cohn_k0_classes() {
  std::vector<Check> out;
  auto fs = k0_presentation(builtin("F_star"));
  auto fss = k0_presentation(builtin("F_star_star"));
  const auto& gs = fs.group;
  const auto& gss = fss.group;
  auto eq = [](const PointedAbelianGroup& g, const K0Element& a, const K0Element& b) {
    return k0_element_equal(g, a, b);
  };
  auto show = [](const K0Element& a) { return render(a); };

  const bool z_star = gs.free_rank == 1 && gs.invariant_factors.empty();
  const bool z_star_star = gss.free_rank == 1 && gss.invariant_factors.empty();
  out.push_back(make_check("K0(L(F_*)) = Z with [1] = -[v1']",
                           z_star && eq(gs, gs.unit_class, gs.negate(fs.class_of("v1'"))), render(gs)));
  out.push_back(make_check("K0(L(F_**)) = Z with [1] = -[w1']",
                           z_star_star && eq(gss, gss.unit_class, gss.negate(fss.class_of("w1'"))), render(gss)));
  if (!z_star || !z_star_star) return out;

  for (const auto* v : {"v1", "v2"}) {
    out.push_back(make_check(std::string("F_*: [") + v + "] = [1]", eq(gs, fs.class_of(v), gs.unit_class),
                             show(fs.class_of(v))));
  }
  out.push_back(make_check("F_*: [v1'] = -[1]", eq(gs, fs.class_of("v1'"), gs.negate(gs.unit_class)),
                           show(fs.class_of("v1'"))));
  for (const auto* w : {"w3", "w4"}) {
    out.push_back(make_check(std::string("F_**: [") + w + "] = 0", eq(gss, fss.class_of(w), gss.zero()),
                             show(fss.class_of(w))));
  }
  for (const auto* w : {"w1", "w2"}) {
    out.push_back(make_check(std::string("F_**: [") + w + "] = [1]", eq(gss, fss.class_of(w), gss.unit_class),
                             show(fss.class_of(w))));
  }
  out.push_back(make_check("F_**: [w1'] = -[1]", eq(gss, fss.class_of("w1'"), gss.negate(gss.unit_class)),
                           show(fss.class_of("w1'"))));

  // Both groups are Z generated by the sink class; compare in those units.
  const auto sink_s = fs.class_of("v1'");
  const auto sink_ss = fss.class_of("w1'");
  auto zs = [&](const K0Element& x) { return in_sink_units(gs, sink_s, x); };
  auto zss = [&](const K0Element& x) { return in_sink_units(gss, sink_ss, x); };
  Integer w234 = zss(fss.class_of("w2")) + zss(fss.class_of("w3")) + zss(fss.class_of("w4"));
  out.push_back(make_check("[v1] = [w1] in sink units", zs(fs.class_of("v1")) == zss(fss.class_of("w1")),
                           zs(fs.class_of("v1")).get_str() + " vs " + zss(fss.class_of("w1")).get_str()));
  out.push_back(make_check("[v2] = [w2] + [w3] + [w4] in sink units", zs(fs.class_of("v2")) == w234,
                           zs(fs.class_of("v2")).get_str() + " vs " + w234.get_str()));
  out.push_back(make_check("[1] = [1] in sink units", zs(gs.unit_class) == zss(gss.unit_class),
                           zs(gs.unit_class).get_str() + " vs " + zss(gss.unit_class).get_str()));
  return out;
}

}  // namespace lpa
