#include "lpa/expression.hpp"

#include <cctype>
#include <vector>

namespace lpa {

ExpressionError::ExpressionError(std::size_t column, const std::string& what)
    : std::runtime_error("column " + std::to_string(column) + ": " + what), column_(column) {}

namespace {

struct Token {
  enum class Kind { Identifier, Integer, Plus, Minus, LParen, RParen, Slash, Star, End } kind;
  std::string text;
  std::size_t column;
};

bool identifier_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && identifier_char(s[j])) ++j;
      out.push_back({Token::Kind::Identifier, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (std::isalpha(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
        throw ExpressionError(col, "malformed number '" + std::string(s.substr(i, j - i + 1)) + "'");
      }
      out.push_back({Token::Kind::Integer, std::string(s.substr(i, j - i)), col});
      i = j;
    } else {
      Token::Kind k;
      switch (c) {
        case '+':
          k = Token::Kind::Plus;
          break;
        case '-':
          k = Token::Kind::Minus;
          break;
        case '(':
          k = Token::Kind::LParen;
          break;
        case ')':
          k = Token::Kind::RParen;
          break;
        case '/':
          k = Token::Kind::Slash;
          break;
        case '*':
          k = Token::Kind::Star;
          break;
        default:
          throw ExpressionError(col, std::string("unexpected character '") + c + "'");
      }
      out.push_back({k, std::string(1, c), col});
      ++i;
    }
  }
  out.push_back({Token::Kind::End, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(const AlgebraContext& ctx, std::vector<Token> tokens) : ctx_(ctx), tokens_(std::move(tokens)) {}

  AlgebraElement parse() {
    if (peek().kind == Token::Kind::End) throw ExpressionError(peek().column, "empty expression");
    AlgebraElement x = expr();
    if (peek().kind != Token::Kind::End) {
      const auto& t = peek();
      if (t.kind == Token::Kind::RParen) throw ExpressionError(t.column, "unbalanced ')'");
      throw ExpressionError(t.column, "unexpected '" + t.text + "'");
    }
    return x;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  AlgebraElement expr() {
    bool negate = false;
    if (peek().kind == Token::Kind::Minus) {
      next();
      negate = true;
    }
    AlgebraElement acc = product();
    if (negate) acc = -acc;
    while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      bool minus = next().kind == Token::Kind::Minus;
      AlgebraElement rhs = product();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  static bool starts_factor(const Token& t) {
    return t.kind == Token::Kind::Identifier || t.kind == Token::Kind::Integer || t.kind == Token::Kind::LParen;
  }

  AlgebraElement product() {
    if (!starts_factor(peek())) {
      const auto& t = peek();
      throw ExpressionError(t.column, t.kind == Token::Kind::End ? "expression ends early"
                                                                : "expected an operand before '" + t.text + "'");
    }
    AlgebraElement acc = factor();
    while (starts_factor(peek())) acc = acc * factor();
    return acc;
  }

  AlgebraElement factor() {
    AlgebraElement x = atom();
    while (peek().kind == Token::Kind::Star) {
      next();
      x = star(x);
    }
    return x;
  }

  AlgebraElement atom() {
    const Token& t = next();
    switch (t.kind) {
      case Token::Kind::Identifier:
        return resolve(t);
      case Token::Kind::Integer: {
        Rational value(mpz_class(t.text));
        if (peek().kind == Token::Kind::Slash) {
          next();
          const Token& d = next();
          if (d.kind != Token::Kind::Integer) throw ExpressionError(d.column, "expected a denominator after '/'");
          mpz_class den(d.text);
          if (den == 0) throw ExpressionError(d.column, "zero denominator");
          value /= den;
        }
        return scalar(ctx_, value);
      }
      case Token::Kind::LParen: {
        AlgebraElement x = expr();
        if (peek().kind != Token::Kind::RParen) throw ExpressionError(t.column, "unbalanced '('");
        next();
        return x;
      }
      default:
        throw ExpressionError(t.column, "unexpected '" + t.text + "'");
    }
  }

  AlgebraElement resolve(const Token& t) {
    const Graph& g = ctx_.graph();
    bool is_vertex = g.has_vertex(t.text);
    bool is_edge = g.has_edge(t.text);
    if (is_vertex && is_edge) throw ExpressionError(t.column, "'" + t.text + "' names both a vertex and an edge");
    if (is_vertex) return vertex(ctx_, t.text);
    if (is_edge) return edge(ctx_, t.text);
    throw ExpressionError(t.column, "unknown identifier '" + t.text + "'");
  }

  const AlgebraContext& ctx_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement evaluate_expression(const AlgebraContext& ctx, std::string_view text) {
  return Parser(ctx, tokenize(text)).parse();
}

}  // namespace lpa
