#include "lpa/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lpa/algebra.hpp"
#include "lpa/classify.hpp"
#include "lpa/expression.hpp"
#include "lpa/families.hpp"
#include "lpa/graph_ops.hpp"
#include "lpa/invariants.hpp"
#include "lpa/k0.hpp"
#include "lpa/moves.hpp"
#include "lpa/verify.hpp"

namespace lpa {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  explicit Report(std::string name = {}) : command(std::move(name)) {}

  std::string command;
  json inputs = json::object();
  std::vector<Check> checks;
  json outputs = json::object();
  std::vector<std::string> lines;  // text rendering
  bool lines_include_checks = false;
};

Graph load_graph_arg(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_graph_file(arg);
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), arg) != names.end()) return builtin(arg);
  throw UsageError("'" + arg + "' is neither a readable graph file nor a built-in graph");
}

std::set<std::string> split_list(const std::string& s) {
  std::set<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.insert(item.substr(b, e - b + 1));
  }
  return out;
}

json coords_json(const K0Element& x) {
  json a = json::array();
  for (const auto& c : x.coords) a.push_back(c.get_str());
  return a;
}

json group_json(const PointedAbelianGroup& p) {
  json factors = json::array();
  for (const auto& d : p.invariant_factors) factors.push_back(d.get_str());
  return {{"rendered", render(p)},
          {"free_rank", p.free_rank},
          {"invariant_factors", factors},
          {"unit", coords_json(p.unit_class)}};
}

json spi_json(const SpiReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back(f.describe());
  return {{"spi", r.is_spi}, {"failures", failures}};
}

json invariants_json(const GraphInvariants& inv) {
  json out = {{"k0", group_json(inv.k0)}, {"spi", inv.spi.is_spi}, {"summary", summary_line(inv)}};
  if (inv.determinant) {
    out["determinant"] = inv.determinant->get_str();
  } else {
    out["determinant"] = nullptr;
    out["presentation"] = inv.presentation_shape;
  }
  return out;
}

json graph_json(const Graph& g) { return json::parse(render_graph(g)); }

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

void emit(const Report& r, bool as_json, std::ostream& out) {
  if (as_json) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"details", c.details}});
    }
    json doc = {{"command", r.command}, {"inputs", r.inputs}, {"checks", checks}, {"outputs", r.outputs}};
    out << doc.dump(2) << "\n";
    return;
  }
  for (const auto& line : r.lines) out << line << "\n";
  if (r.lines_include_checks) return;
  for (const auto& c : r.checks) {
    out << "[" << to_string(c.status) << "] " << c.name;
    if (!c.details.empty()) out << " (" << c.details << ")";
    out << "\n";
  }
}

Report cmd_info(const std::string& arg) {
  Report r{"info"};
  r.inputs["graph"] = arg;
  auto inv = compute_invariants(load_graph_arg(arg));
  r.outputs = invariants_json(inv);
  r.lines.push_back(summary_line(inv));
  return r;
}

Report cmd_spi(const std::string& arg) {
  Report r{"spi"};
  r.inputs["graph"] = arg;
  auto rep = is_spi(load_graph_arg(arg));
  r.outputs = spi_json(rep);
  r.lines.push_back(std::string("SPI=") + (rep.is_spi ? "yes" : "no"));
  for (const auto& f : rep.failures) r.lines.push_back("  " + f.describe());
  return r;
}

Report cmd_k0(const std::string& arg) {
  Report r{"k0"};
  r.inputs["graph"] = arg;
  auto pres = k0_presentation(load_graph_arg(arg));
  r.outputs = group_json(pres.group);
  json classes = json::object();
  r.lines.push_back(render(pres.group));
  for (std::size_t i = 0; i < pres.vertex_names.size(); ++i) {
    classes[pres.vertex_names[i]] = coords_json(pres.vertex_classes[i]);
    r.lines.push_back("[" + pres.vertex_names[i] + "] = " + render(pres.vertex_classes[i]));
  }
  r.outputs["classes"] = classes;
  return r;
}

Report cmd_det(const std::string& arg) {
  Report r{"det"};
  r.inputs["graph"] = arg;
  auto inv = compute_invariants(load_graph_arg(arg));
  if (inv.determinant) {
    r.outputs["determinant"] = inv.determinant->get_str();
    r.lines.push_back(inv.determinant->get_str());
  } else {
    r.outputs["determinant"] = nullptr;
    r.outputs["presentation"] = inv.presentation_shape;
    r.lines.push_back("n/a (sinks; presentation " + inv.presentation_shape + ")");
  }
  return r;
}

Report cmd_move(const std::string& kind_name, const std::string& arg, const std::string& at,
                const std::string& complete_at, const std::string& out_path) {
  Report r{"move"};
  r.inputs = {{"move", kind_name}, {"graph", arg}};
  auto kind = parse_move_kind(kind_name);
  if (!kind) throw UsageError("unknown move '" + kind_name + "'");
  MoveParams params;
  if (*kind == MoveKind::Cohn) {
    params.complete_at = split_list(complete_at);
    r.inputs["complete_at"] = params.complete_at;
  } else {
    if (at.empty()) throw UsageError("move " + kind_name + " needs --at <vertex>");
    params.at = at;
    r.inputs["at"] = at;
  }
  auto report = apply_move_with_report(load_graph_arg(arg), *kind, params);
  r.checks = report.relations;
  r.outputs = {{"before", invariants_json(report.before)},
               {"after", invariants_json(report.after)},
               {"graph", graph_json(report.output)}};
  r.lines.push_back("before: " + summary_line(report.before));
  r.lines.push_back("after:  " + summary_line(report.after));
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write '" + out_path + "'");
    f << render_graph(report.output);
    r.outputs["written_to"] = out_path;
    r.lines.push_back("wrote " + out_path);
  } else {
    std::istringstream text(render_graph(report.output));
    for (std::string line; std::getline(text, line);) r.lines.push_back(line);
  }
  return r;
}

Report cmd_classify(const std::string& a, const std::string& b) {
  Report r{"classify"};
  r.inputs = {{"first", a}, {"second", b}};
  auto v = compare(load_graph_arg(a), load_graph_arg(b));
  r.outputs = {{"verdict", to_string(v.tag)},
               {"justification", v.justification},
               {"first", invariants_json(v.left)},
               {"second", invariants_json(v.right)}};
  if (v.witness) r.outputs["witness"] = matrix_json(*v.witness);
  r.lines.push_back(to_string(v.tag));
  r.lines.push_back("  " + v.justification);
  r.lines.push_back("  first:  " + summary_line(v.left));
  r.lines.push_back("  second: " + summary_line(v.right));
  return r;
}

Report cmd_algebra(const std::string& arg, const std::string& expression, const std::string& complete_at,
                   bool relative) {
  Report r{"algebra"};
  r.inputs = {{"graph", arg}, {"expression", expression}};
  Graph g = load_graph_arg(arg);
  std::set<std::string> v = relative ? split_list(complete_at) : regular_vertices(g);
  r.inputs["complete_at"] = v;
  AlgebraContext ctx(std::move(g), v);
  auto x = evaluate_expression(ctx, expression);
  r.outputs = {{"normal_form", x.to_string()}, {"terms", x.size()}};
  r.lines.push_back(x.to_string());
  return r;
}

Report cmd_verify(const std::string& filter, const std::string& fault) {
  Report r{"verify-paper"};
  r.lines_include_checks = true;
  VerifyOptions opt;
  opt.filter = filter;
  if (!fault.empty()) {
    if (fault != "sign") throw UsageError("unknown fault '" + fault + "'");
    opt.inject_sign_fault = true;
    r.inputs["inject_fault"] = fault;
  }
  if (!filter.empty()) r.inputs["filter"] = filter;
  std::vector<VerificationBlock> blocks;
  try {
    blocks = run_verification(opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json summary = json::array();
  for (const auto& b : blocks) {
    r.lines.push_back((b.passed() ? "PASS " : "FAIL ") + b.name + ": " + b.title);
    for (const auto& c : b.checks) {
      r.lines.push_back("  [" + to_string(c.status) + "] " + c.name + (c.details.empty() ? "" : " (" + c.details + ")"));
      r.checks.push_back({b.name + ": " + c.name, c.status, c.details});
    }
    summary.push_back({{"name", b.name}, {"passed", b.passed()}, {"seconds", b.seconds}});
  }
  r.outputs["blocks"] = summary;
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leavitt path algebra invariants, moves and algebra checks", "lpa"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Print the report as JSON");

  std::string g1, g2, expr, at, complete_at, out_path, filter, fault, move_kind;

  auto* info = app.add_subcommand("info", "Invariants and SPI status of a graph");
  info->add_option("graph", g1, "Graph file or built-in name")->required();
  auto* spi = app.add_subcommand("spi", "Check the SPI conditions");
  spi->add_option("graph", g1, "Graph file or built-in name")->required();
  auto* k0 = app.add_subcommand("k0", "Pointed K0 and vertex classes");
  k0->add_option("graph", g1, "Graph file or built-in name")->required();
  auto* det = app.add_subcommand("det", "det(I - A^t), or the presentation shape when there are sinks");
  det->add_option("graph", g1, "Graph file or built-in name")->required();

  auto* move = app.add_subcommand("move", "Apply a graph move and re-check its invariant relations");
  move->add_option("kind", move_kind, "cuntz-splice | double-cuntz-splice | cohn | add-source")
      ->required()
      ->check(CLI::IsMember({"cuntz-splice", "double-cuntz-splice", "cohn", "add-source"}));
  move->add_option("graph", g1, "Graph file or built-in name")->required();
  move->add_option("--at", at, "Vertex for splices and add-source");
  move->add_option("--complete-at", complete_at, "Comma-separated V for the Cohn graph");
  move->add_option("--out", out_path, "Write the resulting graph here");

  auto* classify = app.add_subcommand("classify", "Compare two graphs by their invariants");
  classify->add_option("first", g1, "Graph file or built-in name")->required();
  classify->add_option("second", g2, "Graph file or built-in name")->required();

  auto* algebra = app.add_subcommand("algebra", "Normal form of an expression in L(E) or C(E, V)");
  algebra->add_option("graph", g1, "Graph file or built-in name")->required();
  algebra->add_option("expression", expr, "e.g. \"(e1 + e2)* (e1 + e2)\"")->required();
  auto* algebra_v = algebra->add_option("--complete-at", complete_at, "Comma-separated V (default: all regular)");

  auto* verify = app.add_subcommand("verify-paper", "Run the built-in identity and property checks");
  verify->add_option("--filter", filter, "Run a single block");
  verify->add_option("--inject-fault", fault)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Report r;
    if (info->parsed()) {
      r = cmd_info(g1);
    } else if (spi->parsed()) {
      r = cmd_spi(g1);
    } else if (k0->parsed()) {
      r = cmd_k0(g1);
    } else if (det->parsed()) {
      r = cmd_det(g1);
    } else if (move->parsed()) {
      r = cmd_move(move_kind, g1, at, complete_at, out_path);
    } else if (classify->parsed()) {
      r = cmd_classify(g1, g2);
    } else if (algebra->parsed()) {
      r = cmd_algebra(g1, expr, complete_at, algebra_v->count() > 0);
    } else {
      r = cmd_verify(filter, fault);
    }
    emit(r, as_json, out);
    return all_passed(r.checks) ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace lpa
