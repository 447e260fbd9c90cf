#include "weyl/poly2.hpp"

#include <sstream>

namespace weyl {

Poly2 Poly2::monomial(int i, int j, const QQ& c) {
  Poly2 p;
  if (c != 0) p.terms_[{i, j}] = c;
  return p;
}

QQ Poly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? QQ(0) : it->second;
}

int Poly2::deg_x() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    if (e.i > d) d = e.i;
  return d;
}

int Poly2::deg_y() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    if (e.j > d) d = e.j;
  return d;
}

int Poly2::total_deg() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.total();
}

void Poly2::add_term(int i, int j, const QQ& c) {
  if (c == 0) return;
  Exponent2 e{i, j};
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e.i, e.j, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e.i, e.j, -c);
  return *this;
}

Poly2& Poly2::operator*=(const QQ& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea.i + eb.i, ea.j + eb.j, ca * cb);
  return r;
}

Poly2 Poly2::diff(char axis, int order) const {
  Poly2 r = *this;
  for (int s = 0; s < order; ++s) {
    Poly2 next;
    for (const auto& [e, c] : r.terms_) {
      if (axis == 'x') {
        if (e.i > 0) next.add_term(e.i - 1, e.j, c * e.i);
      } else {
        if (e.j > 0) next.add_term(e.i, e.j - 1, c * e.j);
      }
    }
    r = std::move(next);
  }
  return r;
}

QQ Poly2::eval(const QQ& vx, const QQ& vy) const {
  QQ acc = 0;
  for (const auto& [e, c] : terms_) {
    QQ t = c;
    for (int s = 0; s < e.i; ++s) t *= vx;
    for (int s = 0; s < e.j; ++s) t *= vy;
    acc += t;
  }
  return acc;
}

namespace {

// Appends "c*x^i*y^j" with the sign handled by the caller (c > 0 coefficients
// print bare; unit coefficients are dropped in front of variables).
void append_term(std::ostringstream& os, const QQ& c, const Exponent2& e) {
  const bool has_vars = e.i > 0 || e.j > 0;
  if (!has_vars || abs(c) != 1) {
    os << QQ(abs(c)).get_str();
    if (has_vars) os << "*";
  }
  if (e.i > 0) {
    os << "x";
    if (e.i > 1) os << "^" << e.i;
    if (e.j > 0) os << "*";
  }
  if (e.j > 0) {
    os << "y";
    if (e.j > 1) os << "^" << e.j;
  }
}

}  // namespace

std::string to_string(const Poly2& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    append_term(os, c, e);
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly2& p) { return os << to_string(p); }

}  // namespace weyl
