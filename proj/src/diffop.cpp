#include "weyl/diffop.hpp"

#include <sstream>

namespace weyl {

DiffOp DiffOp::derivative(int i, int j) { return term(Poly2(QQ(1)), i, j); }

DiffOp DiffOp::term(const Poly2& f, int i, int j) {
  DiffOp t;
  t.add_term(f, i, j);
  return t;
}

int DiffOp::order() const {
  int d = -1;
  for (const auto& [e, f] : terms_)
    if (e.total() > d) d = e.total();
  return d;
}

Poly2 DiffOp::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Poly2() : it->second;
}

void DiffOp::add_term(const Poly2& f, int i, int j) {
  if (f.is_zero()) return;
  Exponent2 e{i, j};
  auto [it, inserted] = terms_.try_emplace(e, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  for (const auto& [e, f] : o.terms_) add_term(f, e.i, e.j);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  for (const auto& [e, f] : o.terms_) add_term(-f, e.i, e.j);
  return *this;
}

DiffOp& DiffOp::operator*=(const QQ& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, f] : terms_) f *= c;
  return *this;
}

DiffOp DiffOp::scaled_by(const Poly2& f) const {
  DiffOp r;
  for (const auto& [e, g] : terms_) r.add_term(f * g, e.i, e.j);
  return r;
}

Poly2 apply(const DiffOp& t, const Poly2& p) {
  Poly2 r;
  for (const auto& [e, f] : t.terms()) r += f * p.diff('x', e.i).diff('y', e.j);
  return r;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  // Dx^i Dy^j ∘ g = Σ_{s≤i,t≤j} C(i,s) C(j,t) (Dx^s Dy^t g) Dx^{i-s} Dy^{j-t}
  DiffOp r;
  for (const auto& [ea, f] : a.terms()) {
    for (const auto& [eb, g] : b.terms()) {
      for (int s = 0; s <= ea.i; ++s) {
        Poly2 gx = g.diff('x', s);
        if (gx.is_zero()) break;
        for (int t = 0; t <= ea.j; ++t) {
          Poly2 gxy = gx.diff('y', t);
          if (gxy.is_zero()) break;
          QQ c(binomial(ea.i, s) * binomial(ea.j, t));
          r.add_term(f * gxy * c, ea.i - s + eb.i, ea.j - t + eb.j);
        }
      }
    }
  }
  return r;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

DiffOp power(const DiffOp& t, int k) {
  DiffOp r = DiffOp::identity();
  for (int s = 0; s < k; ++s) r = compose(r, t);
  return r;
}

std::map<BiDegree, DiffOp, BiDegreeLess> bidegree_decompose(const DiffOp& t) {
  std::map<BiDegree, DiffOp, BiDegreeLess> parts;
  for (const auto& [e, f] : t.terms())
    for (const auto& [m, c] : f.terms())
      parts[{m.i - e.i, m.j - e.j}].add_term(Poly2::monomial(m.i, m.j, c), e.i, e.j);
  return parts;
}

std::optional<int> total_degree(const DiffOp& t, int r) {
  std::optional<int> deg;
  for (const auto& [e, f] : t.terms()) {
    for (const auto& [m, c] : f.terms()) {
      int d = (m.i - e.i) + r * (m.j - e.j);
      if (!deg)
        deg = d;
      else if (*deg != d)
        return std::nullopt;
    }
  }
  return deg ? deg : std::optional<int>(0);
}

namespace {

void append_mono(std::ostringstream& os, const QQ& c, const Exponent2& m, const Exponent2& d) {
  const bool has_factors = m.i > 0 || m.j > 0 || d.i > 0 || d.j > 0;
  bool star = false;
  if (!has_factors || abs(c) != 1) {
    os << QQ(abs(c)).get_str();
    star = true;
  }
  auto put = [&](const char* sym, int p) {
    if (p == 0) return;
    if (star) os << "*";
    os << sym;
    if (p > 1) os << "^" << p;
    star = true;
  };
  put("x", m.i);
  put("y", m.j);
  put("Dx", d.i);
  put("Dy", d.j);
}

}  // namespace

std::string to_string(const DiffOp& t) {
  if (t.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest derivative block first, leading coefficient monomial first.
  for (auto it = t.terms().rbegin(); it != t.terms().rend(); ++it) {
    const auto& [d, f] = *it;
    for (auto mt = f.terms().rbegin(); mt != f.terms().rend(); ++mt) {
      const auto& [m, c] = *mt;
      if (first) {
        if (c < 0) os << "-";
        first = false;
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      append_mono(os, c, m, d);
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const DiffOp& t) { return os << to_string(t); }

}  // namespace weyl
