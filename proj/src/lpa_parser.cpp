#include "grpd/lpa_parser.hpp"

#include <cctype>

namespace grpd {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

bool id_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Parser {
 public:
  Parser(GraphPtr g, Ring ring, const std::string& text) : g_(std::move(g)), ring_(ring), s_(text) {}

  LpaElement parse() {
    LpaElement sum(g_, ring_);
    skip();
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    }
    while (true) {
      auto t = term();
      sum = sum + (negate ? t.scaled(-RingElement::one(ring_)) : t);
      skip();
      if (at_end()) break;
      if (peek() == '+') negate = false;
      else if (peek() == '-') negate = true;
      else fail("expected '+', '-' or end of input");
      ++pos_;
    }
    return sum;
  }

 private:
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
  bool at_end() const { return pos_ >= s_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& message) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    if (at > s_.size()) col += static_cast<int>(at - s_.size());
    throw ParseError(message, line, col);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string integer() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d += s_[pos_++];
    return d;
  }

  std::string ident() {
    std::string id;
    while (id_char(peek())) id += s_[pos_++];
    if (id.empty()) fail("expected an id");
    return id;
  }

  LpaElement identity() const {
    LpaElement one(g_, ring_);
    for (Graph::Index v = 0; v < g_->vertex_count(); ++v) one = one + LpaElement::vertex(g_, ring_, v);
    return one;
  }

  LpaElement term() {
    skip();
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
      skip();
    }
    std::optional<RingElement> coef;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const auto start = pos_;
      auto text = integer();
      if (peek() == '/') {
        ++pos_;
        auto den = integer();
        if (den.empty()) fail("expected a denominator");
        text += "/" + den;
      }
      try {
        coef = RingElement::parse(ring_, text);
      } catch (const std::exception& e) {
        fail_at(start, e.what());
      }
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
      }
    }
    std::optional<LpaElement> product;
    while (true) {
      skip();
      if (peek() == '.' && product) {
        ++pos_;
        skip();
        if (!starts_factor()) fail("expected a factor after '.'");
      }
      if (!starts_factor()) break;
      auto f = factor();
      product = product ? *product * f : f;
    }
    if (!product) {
      if (!coef) fail(at_end() ? "unexpected end of input" : "expected a term");
      product = identity();
    }
    auto r = coef ? product->scaled(*coef) : *product;
    return negate ? r.scaled(-RingElement::one(ring_)) : r;
  }

  bool starts_factor() const { return id_char(peek()) || peek() == '('; }

  LpaElement factor() {
    if (peek() == '(') {
      ++pos_;
      std::vector<std::pair<std::size_t, std::string>> ids;
      while (true) {
        skip();
        const auto at = pos_;
        ids.emplace_back(at, ident());
        skip();
        if (peek() != '.') break;
        ++pos_;
      }
      expect(')');
      expect('^');
      expect('*');
      // (e1...en)^* = t(en)...t(e1)
      std::optional<LpaElement> out;
      for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
        auto e = ghost_or_vertex(it->first, it->second);
        out = out ? *out * e : e;
      }
      return *out;
    }
    const auto at = pos_;
    const auto id = ident();
    if (peek() == '(' && (id == "v" || id == "s" || id == "t")) {
      ++pos_;
      skip();
      const auto arg_at = pos_;
      const auto arg = ident();
      skip();
      expect(')');
      if (id == "v") {
        auto v = g_->find_vertex(arg);
        if (!v) unknown(arg_at, "vertex", arg);
        return LpaElement::vertex(g_, ring_, *v);
      }
      auto e = g_->find_edge(arg);
      if (!e) unknown(arg_at, "edge", arg);
      return id == "s" ? LpaElement::edge(g_, ring_, *e) : LpaElement::ghost(g_, ring_, *e);
    }
    if (auto v = g_->find_vertex(id)) return LpaElement::vertex(g_, ring_, *v);
    if (auto e = g_->find_edge(id)) return LpaElement::edge(g_, ring_, *e);
    unknown(at, "vertex or edge", id);
  }

  LpaElement ghost_or_vertex(std::size_t at, const std::string& id) {
    if (auto v = g_->find_vertex(id)) return LpaElement::vertex(g_, ring_, *v);
    if (auto e = g_->find_edge(id)) return LpaElement::ghost(g_, ring_, *e);
    unknown(at, "vertex or edge", id);
  }

  [[noreturn]] void unknown(std::size_t at, const std::string& what, const std::string& id) const {
    int col = static_cast<int>(at) + 1;
    throw UnknownId("unknown " + what + " '" + id + "' at column " + std::to_string(col));
  }

  GraphPtr g_;
  Ring ring_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

LpaElement parse_lpa(GraphPtr g, Ring ring, const std::string& text) {
  return Parser(std::move(g), ring, text).parse();
}

}  // namespace grpd
