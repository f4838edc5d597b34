#include <cctype>

#include "weylpain/exactpoly.hpp"

namespace weylpain {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const VarTablePtr& table) : s_(s), table_(table) {}

  Poly parse() {
    Poly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(pos_, what); }

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  Poly term() {
    Poly r = factor();
    while (eat('*')) r = r * factor();
    return r;
  }

  Poly factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 0xFFFF) {
        pos_ = start;
        fail("exponent too large");
      }
      return pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational v(digits());
      std::size_t save = pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          fail("expected integer denominator");
        Integer den(digits());
        if (den == 0) fail("zero denominator");
        v /= Rational(den);
      } else {
        pos_ = save;
      }
      return Poly::constant(table_, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = table_->find(name);
      if (!idx)
        throw Error(ErrorCode::UnknownIdentifier,
                    "unknown identifier '" + name + "' at offset " + std::to_string(start));
      return Poly::var(table_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const VarTablePtr& table_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const VarTablePtr& table) { return Parser(text, table).parse(); }

std::string format(const Poly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : a.terms()) {
    bool neg = t.coef < 0;
    Rational mag = abs(t.coef);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < a.table()->size(); ++i) {
      unsigned e = t.mono.e[i];
      if (!e) continue;
      if (!mono.empty()) mono += '*';
      mono += a.table()->name(i);
      if (e > 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty())
      out += format_rational(mag);
    else if (mag == 1)
      out += mono;
    else
      out += format_rational(mag) + "*" + mono;
  }
  return out;
}

}  // namespace weylpain
