#include "weyl/words.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weyl {

int MonomialWord::degree() const {
  int d = 0;
  for (const auto& [name, e] : factors) d += e;
  return d;
}

std::string MonomialWord::str() const {
  if (factors.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, e] : factors) {
    if (!first) out << "*";
    first = false;
    out << name;
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

DiffOp realize(const MonomialWord& w,
               const std::map<std::string, DiffOp>& gens) {
  DiffOp op = DiffOp::identity();
  for (const auto& [name, e] : w.factors) {
    auto it = gens.find(name);
    if (it == gens.end())
      throw std::invalid_argument("word uses unknown generator " + name);
    op = compose(op, power(it->second, e));
  }
  return op;
}

DiffOp realize(const MonomialWord& w, const GeneratorFamily& fam) {
  std::map<std::string, DiffOp> gens;
  for (const NamedOp& g : build_generators(fam)) gens[g.name] = g.op;
  return realize(w, gens);
}

BiDegree word_bidegree(const MonomialWord& w, const GeneratorFamily& fam) {
  std::map<std::string, BiDegree> bd = generator_bidegrees(fam);
  BiDegree d;
  for (const auto& [name, e] : w.factors) {
    auto it = bd.find(name);
    if (it == bd.end())
      throw std::invalid_argument("word uses unknown generator " + name);
    d.dx += e * it->second.dx;
    d.dy += e * it->second.dy;
  }
  return d;
}

int hex_min_length(BiDegree d) {
  return std::max({std::abs(d.dx), std::abs(d.dy), std::abs(d.dx + d.dy)});
}

LatticeLength staircase_min_length(long r, BiDegree d) {
  if (d.dy > 0) return {false, 0};
  long drop = -static_cast<long>(d.dy);
  long extra = std::max<long>(
      {0, static_cast<long>(d.dx) - r * drop, -static_cast<long>(d.dx)});
  return {true, static_cast<int>(drop + extra)};
}

LatticeLength min_length(const GeneratorFamily& fam, BiDegree target) {
  if (target == BiDegree{}) return {true, 0};
  std::set<std::pair<int, int>> steps;
  int span = 1;
  for (const auto& [name, d] : generator_bidegrees(fam)) {
    if (d == BiDegree{}) continue;
    steps.insert({d.dx, d.dy});
    span = std::max({span, std::abs(d.dx), std::abs(d.dy)});
  }
  // Shortest paths for these step sets never need to leave this box.
  int bound = std::abs(target.dx) + std::abs(target.dy) + span + 2;
  auto inside = [&](std::pair<int, int> p) {
    return std::abs(p.first) <= bound && std::abs(p.second) <= bound;
  };
  std::map<std::pair<int, int>, int> dist{{{0, 0}, 0}};
  std::deque<std::pair<int, int>> frontier{{0, 0}};
  while (!frontier.empty()) {
    auto cur = frontier.front();
    frontier.pop_front();
    int d = dist.at(cur);
    for (auto [sx, sy] : steps) {
      std::pair<int, int> next{cur.first + sx, cur.second + sy};
      if (!inside(next) || dist.count(next)) continue;
      if (next == std::make_pair(target.dx, target.dy))
        return {true, d + 1};
      dist[next] = d + 1;
      frontier.push_back(next);
    }
  }
  return {false, 0};
}

namespace {

void push_factor(MonomialWord& w, const std::string& name, int e) {
  if (e > 0) w.factors.push_back({name, e});
}

std::string jname(int idx) { return "J" + std::to_string(idx); }

// Canonical degree-l words, one per bidegree at hexagonal distance l, built
// from adjacent pairs in the 60-degree ring J1,J2,...,J6 (with J0 == J6).
std::vector<MonomialWord> hex_shell_words(int l) {
  std::vector<MonomialWord> out;
  if (l == 0) {
    out.push_back({});
    return out;
  }
  for (int s = 1; s <= 6; ++s)
    for (int j = 1; j <= l; ++j) {
      MonomialWord w;
      push_factor(w, jname(s == 1 ? 6 : s - 1), j);
      push_factor(w, jname(s), l - j);
      out.push_back(w);
    }
  return out;
}

// Canonical degree-l words, one per bidegree at staircase distance l.
std::vector<MonomialWord> staircase_shell_words(long r, int l) {
  std::vector<MonomialWord> out;
  if (l == 0) {
    out.push_back({});
    return out;
  }
  for (int eps = 0; eps <= 1; ++eps)
    for (int j = 0; j <= l; ++j) {
      MonomialWord w;
      push_factor(w, jname(1 + eps), l - j);
      push_factor(w, jname(eps ? 5 + static_cast<int>(r) : 5), j);
      out.push_back(w);
    }
  for (int s = 0; s <= l - 1; ++s)
    for (int i = 1; i <= static_cast<int>(r) - (s == 0 ? 1 : 0); ++i) {
      MonomialWord w;
      push_factor(w, jname(5), s);
      push_factor(w, jname(5 + i), 1);
      push_factor(w, jname(5 + static_cast<int>(r)), l - 1 - s);
      out.push_back(w);
    }
  return out;
}

}  // namespace

std::vector<MonomialWord> maximal_length_monomials(const GeneratorFamily& fam,
                                                   int l) {
  if (l < 0) throw std::invalid_argument("maximal_length_monomials: l < 0");
  std::vector<MonomialWord> out;
  switch (fam.kind) {
    case FamilyKind::Sl2_1D: {
      if (l == 0) return {MonomialWord{}};
      MonomialWord up, down;
      push_factor(up, "J+", l);
      push_factor(down, "J-", l);
      return {up, down};
    }
    case FamilyKind::G11: {
      if (l == 0) return {MonomialWord{}};
      const std::array<std::string, 2> js = {"J+", "J-"};
      const std::array<std::string, 2> ks = {"K+", "K-"};
      for (const std::string& jn : js) {
        MonomialWord w;
        push_factor(w, jn, l);
        out.push_back(w);
      }
      for (const std::string& kn : ks) {
        MonomialWord w;
        push_factor(w, kn, l);
        out.push_back(w);
      }
      for (int a = 1; a < l; ++a)
        for (const std::string& jn : js)
          for (const std::string& kn : ks) {
            MonomialWord w;
            push_factor(w, jn, a);
            push_factor(w, kn, l - a);
            out.push_back(w);
          }
      return out;
    }
    case FamilyKind::G15:
      return hex_shell_words(l);
    case FamilyKind::G24:
      return staircase_shell_words(fam.r, l);
  }
  return out;
}

std::vector<MonomialWord> basis_sl3(long n, int k) {
  (void)n;  // the index pattern is the same for every n
  std::vector<MonomialWord> out;
  for (int t = 0; t <= k; ++t)
    for (int l = 0; l <= t; ++l)
      for (const MonomialWord& head : hex_shell_words(l))
        for (int i = 0; i <= t - l; ++i) {
          MonomialWord w = head;
          push_factor(w, "J7", i);
          push_factor(w, "J8", t - l - i);
          out.push_back(w);
        }
  return out;
}

std::vector<MonomialWord> basis_g24_image(long r, long p, int k) {
  (void)p;
  std::vector<MonomialWord> out;
  for (int t = 0; t <= k; ++t)
    for (int l = 0; l <= t; ++l)
      for (const MonomialWord& head : staircase_shell_words(r, l))
        for (int i = 0; i <= t - l; ++i) {
          MonomialWord w = head;
          push_factor(w, "J3", i);
          push_factor(w, "J4", t - l - i);
          out.push_back(w);
        }
  return out;
}

std::vector<MonomialWord> basis_g24_effective(long r, long p, long q) {
  long jmax = std::min(q, p / r);
  std::vector<MonomialWord> out;
  for (long j = 0; j <= jmax; ++j) {
    for (int eps = 0; eps <= 1; ++eps)
      for (long s = 0; s <= p - j * r; ++s) {
        if (eps == 1 && s == 0 && j == 0) continue;  // both reduce to tails
        for (long m = 0; m + j <= q; ++m)
          for (long n = 0; n + r * m <= p - s - j * r; ++n) {
            MonomialWord w;
            push_factor(w, jname(1 + eps), static_cast<int>(s));
            push_factor(w, jname(eps ? 5 + static_cast<int>(r) : 5),
                        static_cast<int>(j));
            push_factor(w, "J3", static_cast<int>(n));
            push_factor(w, "J4", static_cast<int>(m));
            out.push_back(w);
          }
      }
    for (long t = 0; j >= 1 && t <= j - 1; ++t)
      for (long i = 1; i <= r - (t == 0 ? 1 : 0); ++i)
        for (long m = 0; m + j <= q; ++m)
          for (long n = 0; n + r * m <= p - j * r; ++n) {
            MonomialWord w;
            push_factor(w, jname(5), static_cast<int>(t));
            push_factor(w, jname(5 + static_cast<int>(i)), 1);
            push_factor(w, jname(5 + static_cast<int>(r)),
                        static_cast<int>(j - 1 - t));
            push_factor(w, "J3", static_cast<int>(n));
            push_factor(w, "J4", static_cast<int>(m));
            out.push_back(w);
          }
  }
  return out;
}

namespace {

using OpKey = std::array<int, 4>;

std::map<OpKey, QQ> coeff_vector(const DiffOp& op) {
  std::map<OpKey, QQ> v;
  for (const auto& [deriv, coeff] : op.terms())
    for (const auto& [mono, c] : coeff.terms())
      v[{deriv.i, deriv.j, mono.i, mono.j}] = c;
  return v;
}

long rank_of_vectors(const std::vector<std::map<OpKey, QQ>>& vecs) {
  std::map<OpKey, size_t> index;
  for (const auto& v : vecs)
    for (const auto& [k, c] : v) index.try_emplace(k, index.size());
  QMat A(vecs.size(), index.size());
  for (size_t i = 0; i < vecs.size(); ++i)
    for (const auto& [k, c] : vecs[i]) A.at(i, index.at(k)) = c;
  return static_cast<long>(rank(A));
}

}  // namespace

long realized_rank(const std::vector<MonomialWord>& words,
                   const GeneratorFamily& fam) {
  std::map<std::string, DiffOp> gens;
  for (const NamedOp& g : build_generators(fam)) gens[g.name] = g.op;
  std::vector<std::map<OpKey, QQ>> vecs;
  for (const MonomialWord& w : words)
    vecs.push_back(coeff_vector(realize(w, gens)));
  return rank_of_vectors(vecs);
}

long enveloping_kernel_dim_sl2(long n, int k) {
  std::map<std::string, DiffOp> gens;
  for (const NamedOp& g : build_generators(GeneratorFamily::sl2(n)))
    gens[g.name] = g.op;
  std::vector<std::map<OpKey, QQ>> vecs;
  long count = 0;
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b)
      for (int c = 0; a + b + c <= k; ++c) {
        MonomialWord w;
        push_factor(w, "J+", a);
        push_factor(w, "J-", b);
        push_factor(w, "J0", c);
        vecs.push_back(coeff_vector(realize(w, gens)));
        ++count;
      }
  return count - rank_of_vectors(vecs);
}

namespace {

// Commutative polynomials in (x, y, xi, eta), used for leading symbols.
using Sym = std::map<std::array<int, 4>, QQ>;

Sym sym_mul(const Sym& a, const Sym& b) {
  Sym out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::array<int, 4> e = {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2],
                              ea[3] + eb[3]};
      QQ& slot = out[e];
      slot += ca * cb;
      if (slot == 0) out.erase(e);
    }
  return out;
}

long symbol_kernel_dim(const std::vector<Sym>& symbols, int k) {
  // All commutative monomials of degree exactly k in the given symbols.
  std::vector<Sym> products{{{{0, 0, 0, 0}, QQ(1)}}};
  std::vector<size_t> min_factor{0};
  for (int step = 0; step < k; ++step) {
    std::vector<Sym> next;
    std::vector<size_t> next_min;
    for (size_t t = 0; t < products.size(); ++t)
      for (size_t s = min_factor[t]; s < symbols.size(); ++s) {
        next.push_back(sym_mul(products[t], symbols[s]));
        next_min.push_back(s);
      }
    products = std::move(next);
    min_factor = std::move(next_min);
  }
  std::map<std::array<int, 4>, size_t> index;
  for (const auto& v : products)
    for (const auto& [e, c] : v) index.try_emplace(e, index.size());
  QMat A(products.size(), index.size());
  for (size_t i = 0; i < products.size(); ++i)
    for (const auto& [e, c] : products[i]) A.at(i, index.at(e)) = c;
  return static_cast<long>(products.size()) - static_cast<long>(rank(A));
}

Sym sym_mono(int x, int y, int xi, int eta) {
  return {{{x, y, xi, eta}, QQ(1)}};
}

Sym sym_plus(const Sym& a, const Sym& b) {
  Sym out = a;
  for (const auto& [e, c] : b) {
    QQ& slot = out[e];
    slot += c;
    if (slot == 0) out.erase(e);
  }
  return out;
}

}  // namespace

long symbol_kernel_dim_sl2(int k) {
  std::vector<Sym> symbols = {sym_mono(2, 0, 1, 0), sym_mono(0, 0, 1, 0),
                              sym_mono(1, 0, 1, 0)};
  return symbol_kernel_dim(symbols, k);
}

long symbol_kernel_dim_sl3(int k) {
  std::vector<Sym> symbols = {
      sym_plus(sym_mono(2, 0, 1, 0), sym_mono(1, 1, 0, 1)),
      sym_plus(sym_mono(1, 1, 1, 0), sym_mono(0, 2, 0, 1)),
      sym_mono(0, 1, 1, 0),
      sym_mono(0, 0, 1, 0),
      sym_mono(0, 0, 0, 1),
      sym_mono(1, 0, 0, 1),
      sym_mono(1, 0, 1, 0),
      sym_mono(0, 1, 0, 1)};
  return symbol_kernel_dim(symbols, k);
}

}  // namespace weyl
