#include "weyl/parse.hpp"

#include <cctype>

namespace weyl {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  DiffOp run() {
    DiffOp e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at position " + std::to_string(pos_) + ": " + what + " in \"" +
                     s_ + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_factor() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'y' || c == 'D' ||
           c == '(';
  }

  mpz_class integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return mpz_class(s_.substr(start, pos_ - start));
  }

  DiffOp expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    DiffOp acc = term();
    if (neg) acc *= QQ(-1);
    while (true) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  DiffOp term() {
    DiffOp acc = factor();
    while (true) {
      if (eat('*')) {
        acc = compose(acc, factor());
      } else if (starts_factor()) {
        acc = compose(acc, factor());
      } else {
        break;
      }
    }
    return acc;
  }

  DiffOp factor() {
    DiffOp base = primary();
    if (eat('^')) {
      mpz_class k = integer();
      if (k < 0 || k > 64) fail("exponent out of range");
      return power(base, static_cast<int>(k.get_ui()));
    }
    return base;
  }

  DiffOp primary() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      if (eat('/')) {
        mpz_class den = integer();
        if (den == 0) fail("zero denominator");
        QQ q(num, den);
        q.canonicalize();
        return DiffOp(q);
      }
      return DiffOp(QQ(num));
    }
    if (c == 'D') {
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == 'x') {
        ++pos_;
        return DiffOp::derivative(1, 0);
      }
      if (pos_ < s_.size() && s_[pos_] == 'y') {
        ++pos_;
        return DiffOp::derivative(0, 1);
      }
      fail("expected Dx or Dy");
    }
    if (c == 'x') {
      ++pos_;
      return DiffOp(Poly2::x());
    }
    if (c == 'y') {
      ++pos_;
      return DiffOp(Poly2::y());
    }
    if (c == '(') {
      ++pos_;
      DiffOp e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail("expected a factor");
  }
};

}  // namespace

DiffOp parse_diffop(const std::string& text) { return Parser(text).run(); }

Poly2 parse_poly2(const std::string& text) {
  DiffOp t = parse_diffop(text);
  if (t.order() > 0)
    throw ParseError("expected a polynomial, got a differential operator: \"" + text + "\"");
  return t.coeff(0, 0);
}

QQ parse_rational(const std::string& text) {
  Poly2 p = parse_poly2(text);
  if (p.total_deg() > 0) throw ParseError("expected a rational number: \"" + text + "\"");
  return p.coeff(0, 0);
}

}  // namespace weyl
