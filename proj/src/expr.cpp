#include "ecfam/expr.hpp"

#include <cctype>

namespace ecfam {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string_view var) : s_(text), var_(var) {}

  RatFunc run() {
    RatFunc v = expr();
    skip();
    if (i_ != s_.size()) {
      if (s_[i_] == ')') throw ParseError("unbalanced ')'", i_);
      throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    }
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool starts_atom() {
    skip();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(' ||
           c == '.';
  }

  RatFunc expr() {
    RatFunc v = term();
    for (;;) {
      if (peek('+')) {
        ++i_;
        v += term();
      } else if (peek('-')) {
        ++i_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  RatFunc term() {
    RatFunc v = unary();
    for (;;) {
      if (peek('*') && !(i_ + 1 < s_.size() && s_[i_ + 1] == '*')) {
        ++i_;
        v *= unary();
      } else if (peek('/')) {
        std::size_t at = i_++;
        RatFunc d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        v /= d;
      } else if (starts_atom()) {
        v *= power();
      } else {
        return v;
      }
    }
  }

  RatFunc unary() {
    if (peek('-')) {
      ++i_;
      return -unary();
    }
    if (peek('+')) {
      ++i_;
      return unary();
    }
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    bool caret = peek('^');
    bool stars = !caret && peek('*') && i_ + 1 < s_.size() && s_[i_ + 1] == '*';
    if (!caret && !stars) return base;
    i_ += caret ? 1 : 2;
    skip();
    bool paren = peek('(');
    if (paren) ++i_;
    skip();
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw ParseError("exponent must be an integer literal", start);
    if (i_ - start > 4) throw ParseError("exponent too large", start);
    int e = std::stoi(std::string(s_.substr(start, i_ - start)));
    if (paren) {
      if (!peek(')')) throw ParseError("expected ')'", i_);
      ++i_;
    }
    if (neg && base.is_zero()) throw ParseError("division by zero", start);
    return base.pow(neg ? -e : e);
  }

  RatFunc atom() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      RatFunc v = expr();
      if (!peek(')')) throw ParseError("expected ')'", i_);
      ++i_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string_view name = s_.substr(start, i_ - start);
      if (name == var_) return RatFunc::variable();
      // "4r" style coefficients never glue letters, but "rk" would; be strict.
      throw ParseError("unknown variable '" + std::string(name) + "' (expected '" + std::string(var_) + "')", start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
  }

  RatFunc number() {
    std::size_t start = i_;
    std::string digits;
    int frac = -1;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) {
      if (s_[i_] == '.') {
        if (frac >= 0) throw ParseError("malformed number", start);
        frac = 0;
      } else {
        digits += s_[i_];
        if (frac >= 0) ++frac;
      }
      ++i_;
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    Integer n(digits, 10), d = 1;
    for (int k = 0; k < std::max(frac, 0); ++k) d *= 10;
    return RatFunc(make_rational(n, d));
  }

  std::string_view s_;
  std::string_view var_;
  std::size_t i_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text, std::string_view var) { return Parser(text, var).run(); }

}  // namespace ecfam
