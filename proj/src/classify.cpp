#include "lpa/classify.hpp"

#include "lpa/k0.hpp"
#include "lpa/moves.hpp"

namespace lpa {

std::string to_string(VerdictTag t) {
  switch (t) {
    case VerdictTag::Isomorphic:
      return "Isomorphic";
    case VerdictTag::NotIsomorphicByInvariant:
      return "NotIsomorphicByInvariant";
    case VerdictTag::AKPInstance:
      return "AKPInstance";
    case VerdictTag::Undecided:
      return "Undecided";
    case VerdictTag::NotApplicable:
      return "NotApplicable";
  }
  return "?";
}

namespace {

std::string spi_failures(const SpiReport& r) {
  std::string out;
  for (const auto& f : r.failures) out += (out.empty() ? "" : "; ") + f.describe();
  return out;
}

// Pointed iso search with caps turned into an Undecided verdict.
PointedIsoVerdict pointed_iso_capped(const PointedAbelianGroup& p, const PointedAbelianGroup& q,
                                     const SizeCaps& caps) {
  try {
    return pointed_iso_exists(p, q, caps);
  } catch (const SizeCapError& e) {
    return {PointedIsoVerdict::Kind::Undecided, std::nullopt, e.what()};
  }
}

int sign_of(const Integer& x) { return sgn(x); }

}  // namespace

ClassificationVerdict compare(const Graph& g, const Graph& h, const SizeCaps& caps) {
  ClassificationVerdict v;
  v.left = compute_invariants(g);
  v.right = compute_invariants(h);
  if (!v.left.spi.is_spi || !v.right.spi.is_spi) {
    v.tag = VerdictTag::NotApplicable;
    std::string why;
    if (!v.left.spi.is_spi) why += "first graph is not SPI: " + spi_failures(v.left.spi);
    if (!v.right.spi.is_spi) why += std::string(why.empty() ? "" : "; ") + "second graph is not SPI: " +
                                    spi_failures(v.right.spi);
    v.justification = why;
    return v;
  }

  auto iso = pointed_iso_capped(v.left.k0, v.right.k0, caps);
  if (iso.kind == PointedIsoVerdict::Kind::No) {
    v.tag = VerdictTag::NotIsomorphicByInvariant;
    v.justification = "pointed K0 differs: " + render(v.left.k0) + " vs " + render(v.right.k0) + " (" + iso.reason + ")";
    return v;
  }
  if (iso.kind == PointedIsoVerdict::Kind::Undecided || !iso.witness) {
    v.tag = VerdictTag::Undecided;
    v.justification = "pointed K0 isomorphism undecided: " + iso.reason;
    return v;
  }
  bool valid = false;
  try {
    valid = validate_pointed_iso(v.left.k0, v.right.k0, *iso.witness, caps);
  } catch (const SizeCapError& e) {
    v.tag = VerdictTag::Undecided;
    v.justification = std::string("pointed K0 witness could not be re-validated: ") + e.what();
    return v;
  }
  if (!valid) {
    v.tag = VerdictTag::Undecided;
    v.justification = "pointed K0 witness failed re-validation";
    return v;
  }
  v.witness = iso.witness;

  const Integer& dg = *v.left.determinant;
  const Integer& dh = *v.right.determinant;
  if (dg == dh) {
    v.tag = VerdictTag::Isomorphic;
    v.justification = "pointed K0 isomorphic and det(I - A^t) equal (" + dg.get_str() +
                      "); finite SPI graphs with equal pointed K0 and determinant have isomorphic algebras";
  } else if (dg == -dh) {
    v.tag = VerdictTag::AKPInstance;
    v.justification = "pointed K0 isomorphic but det(I - A^t) has opposite signs (" + dg.get_str() + " vs " +
                      dh.get_str() + "); isomorphism here is the open algebraic Kirchberg-Phillips question";
  } else {
    v.tag = VerdictTag::Undecided;
    v.justification = "pointed K0 isomorphic but determinants " + dg.get_str() + " and " + dh.get_str() +
                      " are neither equal nor opposite";
  }
  return v;
}

ReductionChain reduction_chain(const Graph& e, const Graph& f, const std::string& u) {
  auto ie = compute_invariants(e);
  auto jf = compute_invariants(f);
  if (!ie.spi.is_spi) throw ClassifyError("e is not SPI: " + spi_failures(ie.spi));
  if (!jf.spi.is_spi) throw ClassifyError("f is not SPI: " + spi_failures(jf.spi));
  if (!ie.k0.same_group(jf.k0)) {
    throw ClassifyError("K0 groups differ: " + render_group(ie.k0) + " vs " + render_group(jf.k0));
  }
  if (sign_of(*ie.determinant) * sign_of(*jf.determinant) >= 0) {
    throw ClassifyError("determinants " + ie.determinant->get_str() + " and " + jf.determinant->get_str() +
                        " do not have opposite signs; the equal-determinant criterion applies directly");
  }

  ReductionChain chain;
  try {
    chain.double_splice = double_cuntz_splice(e, u);
    chain.single_splice = cuntz_splice(e, u);
  } catch (const MoveError& err) {
    throw ClassifyError(err.what());
  }
  auto idd = compute_invariants(chain.double_splice);
  auto id = compute_invariants(chain.single_splice);
  auto& c = chain.checks;
  c.push_back(make_check("K0(e_u--) = K0(e)", idd.k0.same_group(ie.k0),
                         render_group(idd.k0) + " vs " + render_group(ie.k0)));
  c.push_back(make_check("det(e_u--) = det(e)", *idd.determinant == *ie.determinant,
                         idd.determinant->get_str() + " vs " + ie.determinant->get_str()));
  c.push_back(make_check("K0(e_u-) = K0(f)", id.k0.same_group(jf.k0),
                         render_group(id.k0) + " vs " + render_group(jf.k0)));
  c.push_back(make_check("det(e_u-) = det(f)", *id.determinant == *jf.determinant,
                         id.determinant->get_str() + " vs " + jf.determinant->get_str()));
  return chain;
}

SignQuestion sign_question_instance(const Graph& g, const Graph& h, const SizeCaps& caps) {
  auto ig = compute_invariants(g);
  auto ih = compute_invariants(h);
  if (!ig.spi.is_spi) throw ClassifyError("first graph is not SPI: " + spi_failures(ig.spi));
  if (!ih.spi.is_spi) throw ClassifyError("second graph is not SPI: " + spi_failures(ih.spi));
  SignQuestion s;
  s.sign_left = sign_of(*ig.determinant);
  s.sign_right = sign_of(*ih.determinant);
  if (s.sign_left == s.sign_right) {
    s.tag = "signs equal";
    return s;
  }
  auto iso = pointed_iso_capped(ig.k0, ih.k0, caps);
  s.open_instance = iso.kind == PointedIsoVerdict::Kind::Yes;
  s.tag = s.open_instance ? "open-question instance" : "invariants differ";
  return s;
}

}  // namespace lpa
