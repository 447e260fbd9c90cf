#pragma once

#include <map>
#include <ostream>
#include <string>

#include "weyl/rational.hpp"

namespace weyl {

/// A monomial exponent pair: x^i * y^j.
struct Exponent2 {
  int i = 0;
  int j = 0;

  int total() const { return i + j; }
  friend bool operator==(const Exponent2&, const Exponent2&) = default;
};

/// Graded-lex order with x before y: degree first, then x-power descending,
/// so bases iterate as 1, x, y, x^2, xy, y^2, ...
struct GrlexLess {
  bool operator()(const Exponent2& a, const Exponent2& b) const {
    if (a.total() != b.total()) return a.total() < b.total();
    return a.i > b.i;
  }
};

/// Sparse bivariate polynomial over QQ. Zero coefficients are never stored,
/// so operator== on the term map is exact polynomial equality.
class Poly2 {
 public:
  using TermMap = std::map<Exponent2, QQ, GrlexLess>;

  Poly2() = default;
  explicit Poly2(const QQ& c) {
    if (c != 0) terms_[{0, 0}] = c;
  }

  static Poly2 monomial(int i, int j, const QQ& c = QQ(1));
  static Poly2 x() { return monomial(1, 0); }
  static Poly2 y() { return monomial(0, 1); }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  QQ coeff(int i, int j) const;

  /// Degree in x / in y / total; -1 for the zero polynomial.
  int deg_x() const;
  int deg_y() const;
  int total_deg() const;

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  Poly2& operator*=(const QQ& c);

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(Poly2 a, const QQ& c) { return a *= c; }
  friend Poly2 operator*(const QQ& c, Poly2 a) { return a *= c; }
  friend Poly2 operator-(const Poly2& a) { return a * QQ(-1); }
  friend bool operator==(const Poly2&, const Poly2&) = default;

  /// Exact iterated partial derivative along 'x' or 'y'.
  Poly2 diff(char axis, int order = 1) const;

  QQ eval(const QQ& vx, const QQ& vy) const;

  void add_term(int i, int j, const QQ& c);

 private:
  TermMap terms_;
};

/// Canonical text form, leading term first: "3*x^2*y - 1/2", "0" for zero.
std::string to_string(const Poly2& p);
std::ostream& operator<<(std::ostream& os, const Poly2& p);

}  // namespace weyl
