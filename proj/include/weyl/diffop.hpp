#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "weyl/poly2.hpp"

namespace weyl {

/// The shift an operator term applies to monomial exponents; entries may be
/// negative (x^c y^d Dx^a Dy^b shifts by (c-a, d-b)).
struct BiDegree {
  int dx = 0;
  int dy = 0;

  friend bool operator==(const BiDegree&, const BiDegree&) = default;
};

struct BiDegreeLess {
  bool operator()(const BiDegree& a, const BiDegree& b) const {
    if (a.dx != b.dx) return a.dx < b.dx;
    return a.dy < b.dy;
  }
};

/// Scalar differential operator in Weyl normal order: a finite sum
/// f_{ij}(x,y) Dx^i Dy^j with coefficients on the left. The normal form is
/// unique, so operator equality is term-map equality.
class DiffOp {
 public:
  using TermMap = std::map<Exponent2, Poly2, GrlexLess>;

  DiffOp() = default;
  explicit DiffOp(const Poly2& f) {
    if (!f.is_zero()) terms_[{0, 0}] = f;
  }
  explicit DiffOp(const QQ& c) : DiffOp(Poly2(c)) {}

  /// Dx^i Dy^j
  static DiffOp derivative(int i, int j);
  /// f(x,y) Dx^i Dy^j
  static DiffOp term(const Poly2& f, int i, int j);
  static DiffOp identity() { return DiffOp(QQ(1)); }

  bool is_zero() const { return terms_.empty(); }
  /// Max i+j over stored derivative indices; -1 for the zero operator.
  int order() const;
  const TermMap& terms() const { return terms_; }
  Poly2 coeff(int i, int j) const;

  void add_term(const Poly2& f, int i, int j);

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp& operator*=(const QQ& c);

  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const QQ& c) { return a *= c; }
  friend DiffOp operator*(const QQ& c, DiffOp a) { return a *= c; }
  friend DiffOp operator-(const DiffOp& a) { return a * QQ(-1); }
  friend bool operator==(const DiffOp&, const DiffOp&) = default;

  /// Multiply every coefficient by f on the left (f * T in operator terms).
  DiffOp scaled_by(const Poly2& f) const;

 private:
  TermMap terms_;
};

Poly2 apply(const DiffOp& t, const Poly2& p);

/// Operator product a∘b, re-normal-ordered by the Leibniz rule.
DiffOp compose(const DiffOp& a, const DiffOp& b);
DiffOp commutator(const DiffOp& a, const DiffOp& b);

/// T^k via compose; k >= 0.
DiffOp power(const DiffOp& t, int k);

/// Split into bidegree-homogeneous parts; the parts sum back to the input.
std::map<BiDegree, DiffOp, BiDegreeLess> bidegree_decompose(const DiffOp& t);

/// dx + r*dy when every homogeneous part agrees on it; nullopt otherwise.
/// The zero operator reports 0.
std::optional<int> total_degree(const DiffOp& t, int r);

/// Canonical text form: monomial-coefficient terms like "x^2*Dx - 2*x",
/// highest derivative first. Parses back bit-exactly.
std::string to_string(const DiffOp& t);
std::ostream& operator<<(std::ostream& os, const DiffOp& t);

}  // namespace weyl
