#include "lpa/invariants.hpp"

#include "lpa/check.hpp"
#include "lpa/linalg.hpp"

namespace lpa {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skip:
      return "skip";
  }
  return "?";
}

bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

Integer det_identity_minus_transpose(const Graph& g) {
  return determinant(identity_minus_transpose(adjacency_matrix(g)));
}

GraphInvariants compute_invariants(const Graph& g) {
  GraphInvariants inv;
  auto pres = k0_presentation(g);
  inv.k0 = pres.group;
  inv.presentation_shape = std::to_string(pres.relations.rows()) + "x" + std::to_string(pres.relations.cols());
  if (!g.has_sinks()) inv.determinant = det_identity_minus_transpose(g);
  inv.spi = is_spi(g);
  return inv;
}

std::string summary_line(const GraphInvariants& inv) {
  std::string det = inv.determinant ? inv.determinant->get_str()
                                    : "n/a (sinks; presentation " + inv.presentation_shape + ")";
  return render(inv.k0) + " ; det=" + det + " ; SPI=" + (inv.spi.is_spi ? "yes" : "no");
}

}  // namespace lpa
