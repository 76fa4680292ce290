#include "lpa/graph.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lpa {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

bool is_valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  for (char c : s.substr(1)) {
    if (!alpha(c) && !digit(c) && c != '_' && c != '\'') return false;
  }
  return true;
}

Graph::Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    const auto& name = vertices_[v];
    if (!is_valid_identifier(name)) throw GraphError("invalid vertex identifier '" + name + "'");
    if (!vertex_lookup_.emplace(name, v).second) {
      throw GraphError("duplicate vertex identifier '" + name + "'");
    }
  }
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  source_.reserve(edges_.size());
  range_.reserve(edges_.size());
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (!is_valid_identifier(edge.id)) throw GraphError("invalid edge identifier '" + edge.id + "'");
    if (!edge_lookup_.emplace(edge.id, e).second) {
      throw GraphError("duplicate edge identifier '" + edge.id + "'");
    }
    auto s = vertex_lookup_.find(edge.source);
    if (s == vertex_lookup_.end()) {
      throw GraphError("edge '" + edge.id + "' has undeclared source '" + edge.source + "'");
    }
    auto r = vertex_lookup_.find(edge.range);
    if (r == vertex_lookup_.end()) {
      throw GraphError("edge '" + edge.id + "' has undeclared range '" + edge.range + "'");
    }
    source_.push_back(s->second);
    range_.push_back(r->second);
    out_[s->second].push_back(e);
    in_[r->second].push_back(e);
  }
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  auto it = vertex_lookup_.find(std::string(name));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
  auto it = edge_lookup_.find(std::string(name));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

VertexId Graph::vertex_index(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw GraphError("unknown vertex '" + std::string(name) + "'");
}

EdgeId Graph::edge_index(std::string_view name) const {
  if (auto e = find_edge(name)) return *e;
  throw GraphError("unknown edge '" + std::string(name) + "'");
}

bool Graph::has_sinks() const {
  for (const auto& out : out_) {
    if (out.empty()) return true;
  }
  return false;
}

std::vector<std::vector<VertexId>> Graph::successors() const {
  std::vector<std::vector<VertexId>> succ(vertices_.size());
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    std::vector<bool> seen(vertices_.size(), false);
    for (EdgeId e : out_[v]) {
      if (!seen[range_[e]]) {
        seen[range_[e]] = true;
        succ[v].push_back(range_[e]);
      }
    }
  }
  return succ;
}

std::set<std::string> regular_vertices(const Graph& g) {
  std::set<std::string> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_sink(v)) out.insert(g.vertex_name(v));
  }
  return out;
}

namespace {

// Line of every string literal in document order. The SAX callbacks below
// see strings (keys and values) in the same order, which is how semantic
// errors get a line position.
std::vector<std::size_t> string_token_lines(std::string_view text) {
  std::vector<std::size_t> lines;
  std::size_t line = 1;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') ++line;
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
    } else if (c == '"') {
      in_string = true;
      lines.push_back(line);
    }
  }
  return lines;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

struct Token {
  std::string value;
  std::size_t line;
};

// Accepts exactly the graph schema and records the line of every identifier.
class GraphSax final : public nlohmann::json_sax<nlohmann::json> {
 public:
  GraphSax(std::string_view text, std::vector<std::size_t> lines)
      : text_(text), lines_(std::move(lines)) {}

  std::vector<Token> vertices;
  std::vector<std::vector<Token>> edges;
  bool saw_vertices = false;
  bool saw_edges = false;

  bool null() override { return reject("null"); }
  bool boolean(bool) override { return reject("boolean"); }
  bool number_integer(number_integer_t) override { return reject("number"); }
  bool number_unsigned(number_unsigned_t) override { return reject("number"); }
  bool number_float(number_float_t, const string_t&) override { return reject("number"); }
  bool binary(binary_t&) override { return reject("binary"); }

  bool string(string_t& val) override {
    std::size_t line = next_line();
    if (depth_ == 2 && section_ == Section::Vertices) {
      vertices.push_back({val, line});
      return true;
    }
    if (depth_ == 3 && section_ == Section::Edges) {
      edges.back().push_back({val, line});
      return true;
    }
    throw ParseError(line, "unexpected string \"" + val + "\"");
  }

  bool key(string_t& val) override {
    std::size_t line = next_line();
    if (depth_ != 1) throw ParseError(line, "unexpected key \"" + val + "\"");
    if (val == "vertices") {
      if (saw_vertices) throw ParseError(line, "duplicate key \"vertices\"");
      saw_vertices = true;
      pending_ = Section::Vertices;
    } else if (val == "edges") {
      if (saw_edges) throw ParseError(line, "duplicate key \"edges\"");
      saw_edges = true;
      pending_ = Section::Edges;
    } else {
      throw ParseError(line, "unknown key \"" + val + "\"");
    }
    return true;
  }

  bool start_object(std::size_t) override {
    if (depth_ != 0) throw ParseError(current_line(), "unexpected object");
    ++depth_;
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }

  bool start_array(std::size_t) override {
    if (depth_ == 1) {
      section_ = pending_;
    } else if (depth_ == 2 && section_ == Section::Edges) {
      edges.emplace_back();
      edge_lines_.push_back(current_line());
    } else {
      throw ParseError(current_line(), "unexpected array");
    }
    ++depth_;
    return true;
  }
  bool end_array() override {
    --depth_;
    if (depth_ == 2 && section_ == Section::Edges && edges.back().size() != 3) {
      throw ParseError(edge_lines_.back(), "edge entry must have exactly 3 elements [id, source, range]");
    }
    if (depth_ == 1) section_ = Section::None;
    return true;
  }

  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
    throw ParseError(line_of_offset(text_, position), std::string("syntax error: ") + ex.what());
  }

 private:
  enum class Section { None, Vertices, Edges };

  std::size_t next_line() {
    std::size_t line = string_index_ < lines_.size() ? lines_[string_index_] : 0;
    ++string_index_;
    last_line_ = line;
    return line;
  }
  std::size_t current_line() const { return last_line_ == 0 ? 1 : last_line_; }
  bool reject(const char* what) {
    throw ParseError(current_line(), std::string("unexpected ") + what + " value");
  }

  std::string_view text_;
  std::vector<std::size_t> lines_;
  std::vector<std::size_t> edge_lines_;
  std::size_t string_index_ = 0;
  std::size_t last_line_ = 0;
  int depth_ = 0;
  Section section_ = Section::None;
  Section pending_ = Section::None;
};

}  // namespace

Graph parse_graph(std::string_view text) {
  GraphSax sax(text, string_token_lines(text));
  nlohmann::json::sax_parse(text.begin(), text.end(), &sax);
  if (!sax.saw_vertices) throw ParseError(1, "missing key \"vertices\"");
  if (!sax.saw_edges) throw ParseError(1, "missing key \"edges\"");

  std::vector<std::string> vertices;
  std::map<std::string, std::size_t> declared;
  for (const auto& tok : sax.vertices) {
    if (!is_valid_identifier(tok.value)) {
      throw ParseError(tok.line, "invalid vertex identifier \"" + tok.value + "\"");
    }
    if (!declared.emplace(tok.value, tok.line).second) {
      throw ParseError(tok.line, "duplicate vertex identifier \"" + tok.value + "\"");
    }
    vertices.push_back(tok.value);
  }

  std::vector<Edge> edges;
  std::set<std::string> edge_ids;
  for (const auto& entry : sax.edges) {
    for (const auto& tok : entry) {
      if (!is_valid_identifier(tok.value)) {
        throw ParseError(tok.line, "invalid identifier \"" + tok.value + "\"");
      }
    }
    if (!edge_ids.insert(entry[0].value).second) {
      throw ParseError(entry[0].line, "duplicate edge identifier \"" + entry[0].value + "\"");
    }
    for (int k = 1; k <= 2; ++k) {
      if (!declared.count(entry[k].value)) {
        throw ParseError(entry[k].line, "edge \"" + entry[0].value + "\" has dangling " +
                                            (k == 1 ? "source" : "range") + " \"" + entry[k].value + "\"");
      }
    }
    edges.push_back({entry[0].value, entry[1].value, entry[2].value});
  }
  return Graph(std::move(vertices), std::move(edges));
}

std::string render_graph(const Graph& g) {
  auto quote = [](const std::string& s) { return nlohmann::json(s).dump(); };
  std::ostringstream out;
  out << "{\n  \"vertices\": [";
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    out << (i ? ", " : "") << quote(g.vertices()[i]);
  }
  out << "],\n  \"edges\": [";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    out << (i ? ",\n" : "\n") << "    [" << quote(e.id) << ", " << quote(e.source) << ", " << quote(e.range)
        << "]";
  }
  out << (g.edges().empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

namespace {

Graph make_e_star() {
  return Graph({"v1", "v2"}, {{"e1", "v1", "v1"}, {"e2", "v1", "v2"}, {"e3", "v2", "v1"}, {"e4", "v2", "v2"}});
}

Graph make_e_star_star() {
  return Graph({"w1", "w2", "w3", "w4"}, {{"f1", "w1", "w1"},
                                          {"f2", "w1", "w2"},
                                          {"f3", "w2", "w1"},
                                          {"f4", "w2", "w2"},
                                          {"f5", "w1", "w3"},
                                          {"f6", "w3", "w1"},
                                          {"f7", "w3", "w3"},
                                          {"f8", "w3", "w4"},
                                          {"f9", "w4", "w3"},
                                          {"f10", "w4", "w4"}});
}

// Drawn directly from the pictures; cohn_graph must reproduce these exactly.
Graph make_f_star() {
  return Graph({"v1", "v2", "v1'"}, {{"e1", "v1", "v1"},
                                     {"e2", "v1", "v2"},
                                     {"e3", "v2", "v1"},
                                     {"e4", "v2", "v2"},
                                     {"e1'", "v1", "v1'"},
                                     {"e3'", "v2", "v1'"}});
}

Graph make_f_star_star() {
  return Graph({"w1", "w2", "w3", "w4", "w1'"}, {{"f1", "w1", "w1"},
                                                 {"f2", "w1", "w2"},
                                                 {"f3", "w2", "w1"},
                                                 {"f4", "w2", "w2"},
                                                 {"f5", "w1", "w3"},
                                                 {"f6", "w3", "w1"},
                                                 {"f7", "w3", "w3"},
                                                 {"f8", "w3", "w4"},
                                                 {"f9", "w4", "w3"},
                                                 {"f10", "w4", "w4"},
                                                 {"f1'", "w1", "w1'"},
                                                 {"f3'", "w2", "w1'"},
                                                 {"f6'", "w3", "w1'"}});
}

Graph make_r3() { return Graph({"u"}, {{"l1", "u", "u"}, {"l2", "u", "u"}, {"l3", "u", "u"}}); }

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"E_star", "E_star_star", "F_star", "F_star_star", "R3"};
  return names;
}

Graph builtin(std::string_view name) {
  if (name == "E_star") return make_e_star();
  if (name == "E_star_star") return make_e_star_star();
  if (name == "F_star") return make_f_star();
  if (name == "F_star_star") return make_f_star_star();
  if (name == "R3") return make_r3();
  throw GraphError("unknown built-in graph '" + std::string(name) + "'");
}

}  // namespace lpa
