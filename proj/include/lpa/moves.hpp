#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpa/check.hpp"
#include "lpa/graph.hpp"
#include "lpa/invariants.hpp"

namespace lpa {

/// A move's precondition failed; the message names the failing condition.
class MoveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpliceResult {
  Graph graph;
  /// Name, in the output, of the attached copy's v1 (or w1 for the double splice).
  std::string attached;
};

/// g disjoint-union E_* plus d1: u -> v1 and d2: v1 -> u. Requires u regular
/// and supporting two return paths.
SpliceResult cuntz_splice_detailed(const Graph& g, const std::string& u);
Graph cuntz_splice(const Graph& g, const std::string& u);

/// g disjoint-union E_** plus d1: u -> w1 and d2: w1 -> u.
SpliceResult double_cuntz_splice_detailed(const Graph& g, const std::string& u);
Graph double_cuntz_splice(const Graph& g, const std::string& u);

/// Cohn graph E(V): a primed copy v' of each regular vertex outside V, and
/// e': s(e) -> r(e)' for every edge whose range is such a vertex.
Graph cohn_graph(const Graph& g, const std::set<std::string>& complete_at);

struct CohnGraphResult {
  Graph graph;
  std::map<std::string, std::string> primed_vertices;  // v -> v'
  std::map<std::string, std::string> primed_edges;     // e -> e'
};
CohnGraphResult cohn_graph_detailed(const Graph& g, const std::set<std::string>& complete_at);

/// One new source vertex with a single edge into u.
Graph add_source(const Graph& g, const std::string& u);

enum class MoveKind { CuntzSplice, DoubleCuntzSplice, Cohn, AddSource };

/// CLI spelling: cuntz-splice, double-cuntz-splice, cohn, add-source.
std::string to_string(MoveKind m);
std::optional<MoveKind> parse_move_kind(const std::string& name);

struct MoveParams {
  std::string at;                      // splice / source vertex
  std::set<std::string> complete_at;   // V for the Cohn graph
};

struct MoveReport {
  MoveKind move;
  MoveParams params;
  Graph input;
  Graph output;
  GraphInvariants before;
  GraphInvariants after;
  /// Relations the move is known to satisfy, recomputed from the invariants.
  std::vector<Check> relations;

  bool ok() const { return all_passed(relations); }
};

MoveReport apply_move_with_report(const Graph& g, MoveKind move, const MoveParams& params);

}  // namespace lpa
