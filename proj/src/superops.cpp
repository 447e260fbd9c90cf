#include "weyl/superops.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace weyl {

MatDiffOp MatDiffOp::diag(const DiffOp& a, const DiffOp& d) {
  MatDiffOp m;
  m.t11 = a;
  m.t22 = d;
  return m;
}

MatDiffOp MatDiffOp::upper(const DiffOp& b) {
  MatDiffOp m;
  m.t12 = b;
  return m;
}

MatDiffOp MatDiffOp::lower(const DiffOp& c) {
  MatDiffOp m;
  m.t21 = c;
  return m;
}

MatDiffOp MatDiffOp::identity() {
  return diag(DiffOp::identity(), DiffOp::identity());
}

MatDiffOp MatDiffOp::sigma3() {
  return diag(DiffOp::identity(), -DiffOp::identity());
}

bool MatDiffOp::is_zero() const {
  return t11.is_zero() && t12.is_zero() && t21.is_zero() && t22.is_zero();
}

bool MatDiffOp::is_diagonal() const { return t12.is_zero() && t21.is_zero(); }

bool MatDiffOp::is_off_diagonal() const {
  return t11.is_zero() && t22.is_zero();
}

MatDiffOp& MatDiffOp::operator+=(const MatDiffOp& o) {
  t11 += o.t11;
  t12 += o.t12;
  t21 += o.t21;
  t22 += o.t22;
  return *this;
}

MatDiffOp& MatDiffOp::operator-=(const MatDiffOp& o) {
  t11 -= o.t11;
  t12 -= o.t12;
  t21 -= o.t21;
  t22 -= o.t22;
  return *this;
}

MatDiffOp& MatDiffOp::operator*=(const QQ& c) {
  t11 *= c;
  t12 *= c;
  t21 *= c;
  t22 *= c;
  return *this;
}

MatDiffOp MatDiffOp::operator-() const {
  MatDiffOp m = *this;
  return m *= QQ(-1);
}

MatDiffOp mat_compose(const MatDiffOp& a, const MatDiffOp& b) {
  MatDiffOp m;
  m.t11 = compose(a.t11, b.t11) + compose(a.t12, b.t21);
  m.t12 = compose(a.t11, b.t12) + compose(a.t12, b.t22);
  m.t21 = compose(a.t21, b.t11) + compose(a.t22, b.t21);
  m.t22 = compose(a.t21, b.t12) + compose(a.t22, b.t22);
  return m;
}

namespace {

std::optional<Parity> parity_of(const MatDiffOp& o) {
  if (o.is_diagonal()) return Parity::Even;  // the zero operator counts even
  if (o.is_off_diagonal()) return Parity::Odd;
  return std::nullopt;
}

}  // namespace

MatDiffOp supercommutator(const MatDiffOp& a, const MatDiffOp& b) {
  std::optional<Parity> pa = parity_of(a), pb = parity_of(b);
  if (!pa || !pb)
    throw std::domain_error(
        "supercommutator: operand mixes diagonal and off-diagonal parts");
  MatDiffOp ab = mat_compose(a, b);
  MatDiffOp ba = mat_compose(b, a);
  if (*pa == Parity::Odd && *pb == Parity::Odd) return ab + ba;
  return ab - ba;
}

SuperFamily SuperFamily::rect(long n, long m, long delta, long gamma) {
  if (delta < 0 || gamma < 0 || n < delta || m < gamma)
    throw std::invalid_argument("sR(n,m,D,G): need 0 <= D <= n, 0 <= G <= m");
  SuperFamily f;
  f.kind = SuperKind::RectSuper;
  f.n = n;
  f.m = m;
  f.delta = delta;
  f.gamma = gamma;
  return f;
}

SuperFamily SuperFamily::tri(long n, long delta) {
  if (delta < 0 || n < delta)
    throw std::invalid_argument("sT(n,D): need 0 <= D <= n");
  SuperFamily f;
  f.kind = SuperKind::TriSuper;
  f.n = n;
  f.delta = delta;
  return f;
}

SuperFamily SuperFamily::stair(long r, long p) {
  if (r < 1 || p < 1)
    throw std::invalid_argument("sS(r,p): need r >= 1, p >= 1");
  SuperFamily f;
  f.kind = SuperKind::StairSuper;
  f.r = r;
  f.p = p;
  return f;
}

SuperFamily SuperFamily::parse(const std::string& text) {
  size_t open = text.find('(');
  size_t close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open ||
      text.find_first_not_of(" \t", close + 1) != std::string::npos)
    throw std::invalid_argument("super family: expected name(args) in \"" +
                                text + "\"");
  std::string name = text.substr(0, open);
  size_t start = name.find_first_not_of(" \t");
  name = start == std::string::npos ? "" : name.substr(start);
  std::vector<long> a;
  std::istringstream in(text.substr(open + 1, close - open - 1));
  std::string piece;
  while (std::getline(in, piece, ',')) {
    size_t pos = 0;
    long v = std::stol(piece, &pos);
    if (piece.find_first_not_of(" \t", pos) != std::string::npos)
      throw std::invalid_argument("super family: bad integer \"" + piece +
                                  "\"");
    a.push_back(v);
  }
  if (name == "sR" && a.size() == 4) return rect(a[0], a[1], a[2], a[3]);
  if (name == "sT" && a.size() == 2) return tri(a[0], a[1]);
  if (name == "sS" && a.size() == 2) return stair(a[0], a[1]);
  throw std::invalid_argument("super family: unknown form \"" + text + "\"");
}

std::string SuperFamily::str() const {
  std::ostringstream out;
  switch (kind) {
    case SuperKind::RectSuper:
      out << "sR(" << n << "," << m << "," << delta << "," << gamma << ")";
      break;
    case SuperKind::TriSuper:
      out << "sT(" << n << "," << delta << ")";
      break;
    case SuperKind::StairSuper:
      out << "sS(" << r << "," << p << ")";
      break;
  }
  return out.str();
}

ModuleSpec SuperFamily::component1() const {
  switch (kind) {
    case SuperKind::RectSuper:
      return ModuleSpec::rect(n - delta, m);
    case SuperKind::TriSuper:
      return ModuleSpec::tri(n - delta);
    case SuperKind::StairSuper:
      return ModuleSpec::stair(r, p - 1, p / r);
  }
  throw std::logic_error("unreachable");
}

ModuleSpec SuperFamily::component2() const {
  switch (kind) {
    case SuperKind::RectSuper:
      return ModuleSpec::rect(n, m - gamma);
    case SuperKind::TriSuper:
      return ModuleSpec::tri(n);
    case SuperKind::StairSuper:
      return ModuleSpec::stair(r, p, p / r);
  }
  throw std::logic_error("unreachable");
}

size_t SuperFamily::generator_count() const {
  switch (kind) {
    case SuperKind::RectSuper:
      return 8 + 2 * static_cast<size_t>((delta + 1) * (gamma + 1));
    case SuperKind::TriSuper:
      return 9 + static_cast<size_t>((delta + 1) * (delta + 2));
    case SuperKind::StairSuper:
      return 10 + 2 * static_cast<size_t>(r);
  }
  return 0;
}

namespace {

DiffOp mono_op(int a, int b, int i, int j, const QQ& c = QQ(1)) {
  return DiffOp::term(Poly2::monomial(a, b, c), i, j);
}

// Product over k=1..gap-alpha of (v Dv - nn + gap - k), composed with
// Dv^alpha; the variable is x when in_x, else y.
DiffOp qbar_one_var(bool in_x, long nn, long gap, long alpha) {
  DiffOp op = in_x ? DiffOp::derivative(static_cast<int>(alpha), 0)
                   : DiffOp::derivative(0, static_cast<int>(alpha));
  DiffOp euler = in_x ? mono_op(1, 0, 1, 0) : mono_op(0, 1, 0, 1);
  for (long k = 1; k <= gap - alpha; ++k)
    op = compose(euler + QQ(gap - nn - k) * DiffOp::identity(), op);
  return op;
}

// Product over k=1..gap-alpha-beta of (x Dx + y Dy - nn + gap - k), composed
// with Dx^alpha Dy^beta.
DiffOp qbar_two_var(long nn, long gap, long alpha, long beta) {
  DiffOp op =
      DiffOp::derivative(static_cast<int>(alpha), static_cast<int>(beta));
  DiffOp euler = mono_op(1, 0, 1, 0) + mono_op(0, 1, 0, 1);
  for (long k = 1; k <= gap - alpha - beta; ++k)
    op = compose(euler + QQ(gap - nn - k) * DiffOp::identity(), op);
  return op;
}

std::map<std::string, DiffOp> named_map(const std::vector<NamedOp>& list) {
  std::map<std::string, DiffOp> m;
  for (const NamedOp& g : list) m[g.name] = g.op;
  return m;
}

std::string qname(char sign, long a) {
  std::ostringstream out;
  out << "Q" << sign << "(" << a << ")";
  return out.str();
}

std::string qname2(char sign, long a, long b) {
  std::ostringstream out;
  out << "Q" << sign << "(" << a << "," << b << ")";
  return out.str();
}

}  // namespace

std::vector<NamedMatOp> build_super_generators(const SuperFamily& fam) {
  std::vector<NamedMatOp> out;
  switch (fam.kind) {
    case SuperKind::RectSuper: {
      long n = fam.n, m = fam.m, D = fam.delta, G = fam.gamma;
      auto sl2x1 = named_map(build_generators(GeneratorFamily::sl2(n - D)));
      auto sl2x2 = named_map(build_generators(GeneratorFamily::sl2(n)));
      auto ytriple = [](long c) {
        std::map<std::string, DiffOp> t;
        t["+"] = mono_op(0, 2, 0, 1) + mono_op(0, 1, 0, 0, QQ(-c));
        t["-"] = DiffOp::derivative(0, 1);
        t["0"] = mono_op(0, 1, 0, 1) + qq(-c, 2) * DiffOp::identity();
        return t;
      };
      auto y1 = ytriple(m), y2 = ytriple(m - G);
      for (const char* s : {"+", "-", "0"})
        out.push_back({std::string("S") + s,
                       MatDiffOp::diag(sl2x1.at(std::string("J") + s),
                                       sl2x2.at(std::string("J") + s)),
                       Parity::Even});
      for (const char* s : {"+", "-", "0"})
        out.push_back({std::string("T") + s,
                       MatDiffOp::diag(y1.at(s), y2.at(s)), Parity::Even});
      out.push_back({"J",
                     MatDiffOp::diag(qq(n + D, 2) * DiffOp::identity(),
                                     qq(n, 2) * DiffOp::identity()),
                     Parity::Even});
      out.push_back({"K",
                     MatDiffOp::diag(qq(m, 2) * DiffOp::identity(),
                                     qq(m + G, 2) * DiffOp::identity()),
                     Parity::Even});
      for (long a = 0; a <= D; ++a)
        for (long b = 0; b <= G; ++b) {
          DiffOp up = compose(qbar_one_var(true, n, D, a),
                              mono_op(0, static_cast<int>(b), 0, 0));
          out.push_back({qname2('+', a, b), MatDiffOp::upper(up), Parity::Odd});
        }
      for (long a = 0; a <= D; ++a)
        for (long b = 0; b <= G; ++b) {
          DiffOp low = compose(mono_op(static_cast<int>(a), 0, 0, 0),
                               qbar_one_var(false, m, G, b));
          out.push_back({qname2('-', a, b), MatDiffOp::lower(low), Parity::Odd});
        }
      break;
    }
    case SuperKind::TriSuper: {
      long n = fam.n, D = fam.delta;
      auto g1 = build_generators(GeneratorFamily::g15(n - D));
      auto g2 = build_generators(GeneratorFamily::g15(n));
      for (size_t i = 0; i < g1.size(); ++i)
        out.push_back({"T" + std::to_string(i + 1),
                       MatDiffOp::diag(g1[i].op, g2[i].op), Parity::Even});
      out.push_back({"J",
                     MatDiffOp::diag(qq(n + 2 * D, 3) * DiffOp::identity(),
                                     qq(n, 3) * DiffOp::identity()),
                     Parity::Even});
      for (long a = 0; a <= D; ++a)
        for (long b = 0; a + b <= D; ++b)
          out.push_back({qname2('+', a, b),
                         MatDiffOp::upper(qbar_two_var(n, D, a, b)),
                         Parity::Odd});
      for (long a = 0; a <= D; ++a)
        for (long b = 0; a + b <= D; ++b)
          out.push_back({qname2('-', a, b),
                         MatDiffOp::lower(mono_op(static_cast<int>(a),
                                                  static_cast<int>(b), 0, 0)),
                         Parity::Odd});
      break;
    }
    case SuperKind::StairSuper: {
      long r = fam.r, p = fam.p;
      auto g1 = build_generators(GeneratorFamily::g24(r, p - 1));
      auto g2 = build_generators(GeneratorFamily::g24(r, p));
      for (size_t i = 0; i < g1.size(); ++i)
        out.push_back({"T" + std::to_string(i + 1),
                       MatDiffOp::diag(g1[i].op, g2[i].op), Parity::Even});
      out.push_back({"J",
                     MatDiffOp::diag(qq(p + 1, 2) * DiffOp::identity(),
                                     qq(p, 2) * DiffOp::identity()),
                     Parity::Even});
      out.push_back({qname('+', 0),
                     MatDiffOp::upper(mono_op(1, 0, 1, 0) +
                                      QQ(r) * mono_op(0, 1, 0, 1) +
                                      QQ(-p) * DiffOp::identity()),
                     Parity::Odd});
      out.push_back({qname('+', 1), MatDiffOp::upper(DiffOp::derivative(1, 0)),
                     Parity::Odd});
      for (long a = 0; a < r; ++a)
        out.push_back({qname('+', 2 + a),
                       MatDiffOp::upper(mono_op(static_cast<int>(a), 0, 0, 1)),
                       Parity::Odd});
      out.push_back(
          {qname('-', 0), MatDiffOp::lower(DiffOp::identity()), Parity::Odd});
      out.push_back(
          {qname('-', 1), MatDiffOp::lower(mono_op(1, 0, 0, 0)), Parity::Odd});
      break;
    }
  }
  if (out.size() != fam.generator_count())
    throw std::logic_error("generator count mismatch for " + fam.str());
  return out;
}

namespace {

bool is_scalar_identity_multiple(const MatDiffOp& op) {
  if (!op.is_diagonal()) return false;
  if (!(op.t11 == op.t22)) return false;
  if (op.t11.is_zero()) return true;
  if (op.t11.order() != 0) return false;
  return op.t11.coeff(0, 0).total_deg() <= 0;
}

}  // namespace

std::vector<NamedMatOp> effective_super_generators(
    const SuperFamily& fam, std::vector<std::string>* dropped,
    bool* adjoined_sigma3) {
  std::vector<NamedMatOp> full = build_super_generators(fam);
  std::vector<NamedMatOp> out;
  std::vector<std::string> removed;
  size_t bookkeeping = 0, bookkeeping_scalar = 0;
  for (const NamedMatOp& g : full) {
    bool book = g.name == "J" || g.name == "K";
    bookkeeping += book;
    if (is_scalar_identity_multiple(g.op)) {
      removed.push_back(g.name);
      bookkeeping_scalar += book;
      continue;
    }
    out.push_back(g);
  }
  bool adjoin = bookkeeping > 0 && bookkeeping == bookkeeping_scalar;
  if (adjoin) out.push_back({"sigma3", MatDiffOp::sigma3(), Parity::Even});
  if (dropped) *dropped = removed;
  if (adjoined_sigma3) *adjoined_sigma3 = adjoin;
  return out;
}

namespace {

using MatKey = std::array<int, 5>;

std::map<MatKey, QQ> mat_vector(const MatDiffOp& op) {
  std::map<MatKey, QQ> v;
  const DiffOp* blocks[4] = {&op.t11, &op.t12, &op.t21, &op.t22};
  for (int b = 0; b < 4; ++b)
    for (const auto& [deriv, coeff] : blocks[b]->terms())
      for (const auto& [mono, c] : coeff.terms())
        v[{b, deriv.i, deriv.j, mono.i, mono.j}] = c;
  return v;
}

struct TaggedOp {
  MatDiffOp op;
  Parity parity;
};

}  // namespace

ClosureResult closure_analysis(const SuperFamily& fam, int degree_cap) {
  ClosureResult res;
  std::vector<NamedMatOp> gens = effective_super_generators(
      fam, &res.dropped_central, &res.adjoined_sigma3);

  SparseReducer<MatKey> span;
  span.add(mat_vector(MatDiffOp::identity()));
  std::vector<TaggedOp> basis;
  for (const NamedMatOp& g : gens)
    if (span.add(mat_vector(g.op))) basis.push_back({g.op, g.parity});
  res.growth.push_back(static_cast<long>(span.dim()) - 1);

  std::vector<TaggedOp> frontier = basis;
  for (int round = 1; round <= degree_cap; ++round) {
    std::vector<TaggedOp> added;
    for (const NamedMatOp& g : gens)
      for (const TaggedOp& f : frontier) {
        MatDiffOp c = supercommutator(g.op, f.op);
        if (c.is_zero()) continue;
        if (span.add(mat_vector(c))) {
          Parity par = g.parity == f.parity ? Parity::Even : Parity::Odd;
          added.push_back({c, par});
          basis.push_back({c, par});
        }
      }
    res.rounds = round;
    res.growth.push_back(static_cast<long>(span.dim()) - 1);
    if (added.empty()) {
      res.stabilized = true;
      break;
    }
    frontier = std::move(added);
  }

  res.dim = static_cast<long>(span.dim()) - 1;
  for (const TaggedOp& b : basis)
    (b.parity == Parity::Even ? res.even_dim : res.odd_dim) += 1;

  if (res.stabilized) {
    SparseReducer<MatKey> no_id;
    for (const TaggedOp& b : basis)
      if (!no_id.add(mat_vector(b.op)))
        throw std::logic_error("closure basis unexpectedly dependent");
    for (size_t i = 0; i < basis.size() && !res.identity_appeared; ++i)
      for (size_t j = i; j < basis.size(); ++j) {
        MatDiffOp c = supercommutator(basis[i].op, basis[j].op);
        if (!no_id.reduce(mat_vector(c)).empty()) {
          res.identity_appeared = true;
          break;
        }
      }

    // Derived series of the closed span, modulo the identity.
    std::vector<TaggedOp> layer = basis;
    long prev = res.dim;
    for (int step = 0; step < 8; ++step) {
      SparseReducer<MatKey> d;
      d.add(mat_vector(MatDiffOp::identity()));
      std::vector<TaggedOp> next;
      for (size_t i = 0; i < layer.size(); ++i)
        for (size_t j = i; j < layer.size(); ++j) {
          MatDiffOp c = supercommutator(layer[i].op, layer[j].op);
          if (c.is_zero()) continue;
          if (d.add(mat_vector(c)))
            next.push_back({c, layer[i].parity == layer[j].parity
                                   ? Parity::Even
                                   : Parity::Odd});
        }
      long dim = static_cast<long>(d.dim()) - 1;
      res.derived_dims.push_back(dim);
      if (dim == prev) break;
      prev = dim;
      layer = std::move(next);
    }
  }
  return res;
}

InvarianceReport structure_constant_invariance(
    const std::vector<SuperFamily>& grid) {
  if (grid.empty())
    throw std::invalid_argument("structure_constant_invariance: empty grid");

  InvarianceReport report;
  std::vector<std::vector<std::vector<QVec>>> tables;
  std::vector<Parity> parities;

  for (const SuperFamily& fam : grid) {
    std::vector<NamedMatOp> gens = effective_super_generators(fam);
    std::vector<std::string> names;
    for (const NamedMatOp& g : gens) names.push_back(g.name);
    if (report.names.empty()) {
      report.names = names;
      for (const NamedMatOp& g : gens) parities.push_back(g.parity);
    } else if (report.names != names) {
      throw std::invalid_argument(
          "structure_constant_invariance: grid families have different "
          "generator lists");
    }

    size_t g = gens.size();
    std::vector<std::map<MatKey, QQ>> cols;
    for (const NamedMatOp& gen : gens) cols.push_back(mat_vector(gen.op));
    cols.push_back(mat_vector(MatDiffOp::identity()));
    std::map<MatKey, size_t> key_index;
    for (const auto& col : cols)
      for (const auto& [k, c] : col) key_index.try_emplace(k, key_index.size());

    std::vector<std::vector<QVec>> table(g, std::vector<QVec>(g));
    QMat A(key_index.size(), cols.size());
    for (size_t col = 0; col < cols.size(); ++col)
      for (const auto& [k, val] : cols[col]) A.at(key_index.at(k), col) = val;
    for (size_t i = 0; i < g; ++i)
      for (size_t j = 0; j < g; ++j) {
        MatDiffOp c = supercommutator(gens[i].op, gens[j].op);
        QVec b(key_index.size(), QQ(0));
        for (const auto& [k, val] : mat_vector(c)) {
          auto it = key_index.find(k);
          if (it == key_index.end())
            throw std::domain_error(
                "structure_constant_invariance: bracket escapes span for " +
                fam.str());
          b[it->second] = val;
        }
        std::optional<QVec> x = solve(A, b);
        if (!x)
          throw std::domain_error(
              "structure_constant_invariance: bracket escapes span for " +
              fam.str());
        table[i][j] = *x;
      }
    tables.push_back(std::move(table));
  }

  size_t g = report.names.size();
  for (size_t t = 1; t < tables.size(); ++t)
    for (size_t i = 0; i < g; ++i)
      for (size_t j = 0; j < g; ++j) {
        const QVec& a = tables[0][i][j];
        const QVec& b = tables[t][i][j];
        for (size_t c = 0; c < g; ++c)
          if (a[c] != b[c]) report.generator_coeffs_match = false;
        if (a[g] != b[g]) {
          bool exempt = grid[0].kind == SuperKind::TriSuper &&
                        parities[i] == Parity::Odd &&
                        parities[j] == Parity::Odd;
          if (exempt)
            report.exempt_identity_varies = true;
          else
            report.identity_coeffs_match = false;
        }
      }
  return report;
}

std::string identify_structure(const ClosureResult& res) {
  if (!res.stabilized) return "";
  const std::vector<long>& d = res.derived_dims;
  if (res.even_dim == 7 && res.odd_dim == 2 &&
      d == std::vector<long>{8, 6, 6})
    return "sl2 + sl2 + sl2";
  if (res.even_dim == 7 && res.odd_dim == 4 && d == std::vector<long>{11})
    return "spl(2,1) + sl2";
  if (res.even_dim == 9 && res.odd_dim == 2 &&
      d == std::vector<long>{10, 8, 8})
    return "sl3 + sl2";
  if (res.even_dim == 9 && res.odd_dim == 6 && d == std::vector<long>{15})
    return "spl(3,1)";
  long r = res.even_dim - 6;
  if (r >= 1 && res.odd_dim == r + 4 &&
      d == std::vector<long>{2 * r + 9, 2 * r + 9})
    return "pl(2,1) |x C^(" + std::to_string(r + 1) + "|" +
           std::to_string(r) + ")";
  return "";
}

int MatWord::tail_degree() const {
  int d = 0;
  for (const auto& [name, e] : factors) d += e;
  return d;
}

std::string MatWord::str() const {
  std::ostringstream out;
  bool wrote = false;
  if (head != "1" || factors.empty()) {
    out << head;
    wrote = true;
  }
  for (const auto& [name, e] : factors) {
    if (wrote) out << "*";
    wrote = true;
    out << name;
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

namespace {

MatDiffOp mat_power(const MatDiffOp& op, int e) {
  MatDiffOp out = MatDiffOp::identity();
  for (int i = 0; i < e; ++i) out = mat_compose(out, op);
  return out;
}

std::map<std::string, MatDiffOp> word_factor_table(const SuperFamily& fam) {
  std::map<std::string, MatDiffOp> table;
  for (const NamedMatOp& g : build_super_generators(fam)) table[g.name] = g.op;
  table["P1"] = MatDiffOp::diag(DiffOp::identity(), DiffOp());
  table["P2"] = MatDiffOp::diag(DiffOp(), DiffOp::identity());
  table["1"] = MatDiffOp::identity();
  table["sigma3"] = MatDiffOp::sigma3();
  return table;
}

MatDiffOp realize_with(const MatWord& w,
                       const std::map<std::string, MatDiffOp>& table) {
  auto look = [&](const std::string& name) -> const MatDiffOp& {
    auto it = table.find(name);
    if (it == table.end())
      throw std::invalid_argument("matrix word uses unknown factor " + name);
    return it->second;
  };
  MatDiffOp op = look(w.head);
  for (const auto& [name, e] : w.factors)
    op = mat_compose(op, mat_power(look(name), e));
  return op;
}

}  // namespace

MatDiffOp realize(const MatWord& w, const SuperFamily& fam) {
  return realize_with(w, word_factor_table(fam));
}

namespace {

// Renames scalar-family generator names to the diagonal names: for the
// one-variable pair (rectangle) J* -> S* and K* -> T*, otherwise J<i> -> T<i>.
std::vector<std::pair<std::string, int>> tail_from_scalar(
    const MonomialWord& w, bool one_var_pair) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& [name, e] : w.factors) {
    std::string renamed;
    if (one_var_pair && name[0] == 'J')
      renamed = "S" + name.substr(1);
    else if (one_var_pair && name[0] == 'K')
      renamed = "T" + name.substr(1);
    else if (name[0] == 'J')
      renamed = "T" + name.substr(1);
    else
      throw std::logic_error("unexpected scalar generator name " + name);
    out.push_back({renamed, e});
  }
  return out;
}

int hex_offset_min(BiDegree d, long D, int sign, long* best_a, long* best_b) {
  // min over alpha+beta <= D of hex(d + sign*(alpha,beta)); reports the
  // graded-lex-first minimizer.
  int best = -1;
  for (long t = 0; t <= D; ++t)
    for (long a = t; a >= 0; --a) {
      long b = t - a;
      BiDegree shifted{d.dx + sign * static_cast<int>(a),
                       d.dy + sign * static_cast<int>(b)};
      int h = hex_min_length(shifted);
      if (best < 0 || h < best) {
        best = h;
        if (best_a) *best_a = a;
        if (best_b) *best_b = b;
      }
    }
  return best;
}

std::vector<MatWord> tri_odd_words(long D, int k, char sign) {
  // sign '+': heads Q+(a,b), all of order D, budget K = k - D;
  // sign '-': heads Q-(a,b), all of order 0, budget K = k.
  int K = sign == '+' ? k - static_cast<int>(D) : k;
  std::vector<MatWord> out;
  if (K < 0) return out;
  int offset_sign = sign == '+' ? +1 : -1;

  std::vector<std::map<std::pair<int, int>, MonomialWord>> shell_word(K + 1);
  for (int l = 0; l <= K; ++l)
    for (const MonomialWord& w :
         maximal_length_monomials(GeneratorFamily::g15(1), l)) {
      BiDegree d = word_bidegree(w, GeneratorFamily::g15(1));
      shell_word[l][{d.dx, d.dy}] = w;
    }

  int box = K + static_cast<int>(D) + 1;
  for (int dx = -box; dx <= box; ++dx)
    for (int dy = -box; dy <= box; ++dy) {
      BiDegree d{dx, dy};
      long a = 0, b = 0;
      int l = hex_offset_min(d, D, offset_sign, &a, &b);
      if (l > K) continue;
      BiDegree e{d.dx + offset_sign * static_cast<int>(a),
                 d.dy + offset_sign * static_cast<int>(b)};
      const MonomialWord& hexw = shell_word[l].at({e.dx, e.dy});
      for (int i = 0; i + l <= K; ++i)
        for (int j = 0; i + j + l <= K; ++j) {
          MatWord w;
          w.head = qname2(sign, a, b);
          w.factors = tail_from_scalar(hexw, false);
          if (i > 0) w.factors.push_back({"T7", i});
          if (j > 0) w.factors.push_back({"T8", j});
          out.push_back(w);
        }
    }
  return out;
}

void append_pattern_words(std::vector<MatWord>& out, const MatWord& stem,
                          const std::string& up, const std::string& down,
                          const std::string& zero, int budget) {
  // stem * (up)^i (zero)^s and stem * (down)^i (zero)^s with i + s <= budget;
  // the i = 0 words appear once.
  for (int i = 0; i <= budget; ++i)
    for (int s = 0; i + s <= budget; ++s) {
      MatWord w = stem;
      if (i > 0) w.factors.push_back({up, i});
      if (s > 0) w.factors.push_back({zero, s});
      out.push_back(w);
      if (i > 0) {
        MatWord v = stem;
        v.factors.push_back({down, i});
        if (s > 0) v.factors.push_back({zero, s});
        out.push_back(v);
      }
    }
}

std::vector<MatWord> rect_words_for_sign(long D, long G, int k, char sign) {
  std::vector<MatWord> out;
  int head_cost = static_cast<int>(sign == '+' ? D : G);
  if (k < head_cost) return out;
  int budget = k - head_cost;

  // Head Q(0,0): full pattern in both variables.
  {
    std::vector<MatWord> sfirst;
    MatWord stem;
    stem.head = qname2(sign, 0, 0);
    append_pattern_words(sfirst, stem, "S+", "S-", "S0", budget);
    for (const MatWord& sw : sfirst)
      append_pattern_words(out, sw, "T+", "T-", "T0",
                           budget - sw.tail_degree());
  }
  std::string sstar = sign == '+' ? "S-" : "S+";
  std::string tsame = sign == '+' ? "T+" : "T-";
  // Heads Q(a,0), a >= 1: opposite-sign x-powers, full y-pattern.
  for (long a = 1; a <= D; ++a)
    for (int i = 0; i <= budget; ++i) {
      MatWord stem;
      stem.head = qname2(sign, a, 0);
      if (i > 0) stem.factors.push_back({sstar, i});
      append_pattern_words(out, stem, "T+", "T-", "T0", budget - i);
    }
  // Heads Q(0,b), b >= 1: full x-pattern, same-sign y-powers.
  for (long b = 1; b <= G; ++b) {
    std::vector<MatWord> sfirst;
    MatWord stem;
    stem.head = qname2(sign, 0, b);
    append_pattern_words(sfirst, stem, "S+", "S-", "S0", budget);
    for (const MatWord& sw : sfirst) {
      out.push_back(sw);
      for (int j = 1; sw.tail_degree() + j <= budget; ++j) {
        MatWord w = sw;
        w.factors.push_back({tsame, j});
        out.push_back(w);
      }
    }
  }
  // Heads Q(a,b), a,b >= 1: opposite-sign x-powers, same-sign y-powers.
  for (long a = 1; a <= D; ++a)
    for (long b = 1; b <= G; ++b)
      for (int i = 0; i <= budget; ++i)
        for (int j = 0; i + j <= budget; ++j) {
          MatWord w;
          w.head = qname2(sign, a, b);
          if (i > 0) w.factors.push_back({sstar, i});
          if (j > 0) w.factors.push_back({tsame, j});
          out.push_back(w);
        }
  return out;
}

}  // namespace

std::vector<MatWord> stair_sigma_minus_words(long r, long p, long q) {
  if (q < 0) q = p / r;
  std::vector<MatWord> out;
  long cap1 = p - 1;  // tails act on the smaller component
  for (int eps = 0; eps <= 1; ++eps)
    for (long j = 0; j * r <= cap1 && j <= q; ++j)
      for (long s = 0; s <= cap1 - j * r; ++s)
        for (long m = 0; m + j <= q; ++m)
          for (long n = 0; n + r * m <= cap1 - s - j * r; ++n) {
            MatWord w;
            w.head = qname('-', eps);
            if (s > 0)
              w.factors.push_back({eps ? "T2" : "T1", static_cast<int>(s)});
            if (j > 0)
              w.factors.push_back({"T" + std::to_string(eps ? 5 + r : 5),
                                   static_cast<int>(j)});
            if (n > 0) w.factors.push_back({"T3", static_cast<int>(n)});
            if (m > 0) w.factors.push_back({"T4", static_cast<int>(m)});
            out.push_back(w);
          }
  for (long j = 1; j * r <= cap1 && j <= q; ++j)
    for (long t = 0; t <= j - 1; ++t)
      for (long i = 1; i <= r; ++i)
        for (long m = 0; m + j <= q; ++m)
          for (long n = 0; n + r * m <= cap1 - j * r; ++n) {
            MatWord w;
            w.head = qname('-', 0);
            if (t > 0) w.factors.push_back({"T5", static_cast<int>(t)});
            w.factors.push_back({"T" + std::to_string(5 + i), 1});
            if (j - 1 - t > 0)
              w.factors.push_back({"T" + std::to_string(5 + r),
                                   static_cast<int>(j - 1 - t)});
            if (n > 0) w.factors.push_back({"T3", static_cast<int>(n)});
            if (m > 0) w.factors.push_back({"T4", static_cast<int>(m)});
            out.push_back(w);
          }
  return out;
}

Rank2Words rank2_basis(const SuperFamily& fam, int k) {
  Rank2Words words;
  switch (fam.kind) {
    case SuperKind::TriSuper: {
      for (const char* head : {"P1", "P2"})
        for (const MonomialWord& w : basis_sl3(fam.n, k)) {
          MatWord mw;
          mw.head = head;
          mw.factors = tail_from_scalar(w, false);
          words.even.push_back(mw);
        }
      words.plus = tri_odd_words(fam.delta, k, '+');
      words.minus = tri_odd_words(fam.delta, k, '-');
      break;
    }
    case SuperKind::RectSuper: {
      // The published even words pair the components through 1/sigma3 heads.
      for (const char* head : {"1", "sigma3"}) {
        std::vector<MatWord> sfirst;
        MatWord stem;
        stem.head = head;
        append_pattern_words(sfirst, stem, "S+", "S-", "S0", k);
        for (const MatWord& sw : sfirst)
          append_pattern_words(words.even, sw, "T+", "T-", "T0",
                               k - sw.tail_degree());
      }
      words.plus = rect_words_for_sign(fam.delta, fam.gamma, k, '+');
      words.minus = rect_words_for_sign(fam.delta, fam.gamma, k, '-');
      break;
    }
    case SuperKind::StairSuper: {
      for (const char* head : {"P1", "P2"})
        for (const MonomialWord& w : basis_g24_image(fam.r, fam.p, k)) {
          MatWord mw;
          mw.head = head;
          mw.factors = tail_from_scalar(w, false);
          words.even.push_back(mw);
        }
      for (const MatWord& w : stair_sigma_minus_words(fam.r, fam.p))
        if (w.tail_degree() <= k) words.minus.push_back(w);
      // Sigma+ words: every odd raising head with image-pattern tails. The
      // list spans the sigma+ block; it is allowed to be overcomplete.
      for (long h = 0; h <= fam.r + 1; ++h)
        for (const MonomialWord& w :
             basis_g24_effective(fam.r, fam.p, fam.p / fam.r)) {
          if (w.degree() > k) continue;
          MatWord mw;
          mw.head = qname('+', h);
          mw.factors = tail_from_scalar(w, false);
          words.plus.push_back(mw);
        }
      break;
    }
  }
  return words;
}

std::vector<MatWord> Rank2Words::all() const {
  std::vector<MatWord> out = even;
  out.insert(out.end(), plus.begin(), plus.end());
  out.insert(out.end(), minus.begin(), minus.end());
  return out;
}

namespace {

struct BlockExpressResult {
  std::map<size_t, QQ> coeffs;  // word index -> coefficient
  DiffOp residue;
  int degree = 0;
};

// Per-bidegree minimal-cap solve of T's action over homogeneous block words;
// the rectangular analogue of the scalar express engine. With
// nonpositive_reachability, parts with dy > 0 go to the residue (after
// splitting off what annihilates the source module).
BlockExpressResult block_express(const DiffOp& T,
                                 const std::vector<DiffOp>& word_ops,
                                 const std::vector<int>& word_deg,
                                 const ModuleSpec& src, const ModuleSpec& dst,
                                 bool nonpositive_reachability) {
  BlockExpressResult out;
  std::vector<Exponent2> sbasis = module_basis(src);
  std::vector<Exponent2> dbasis = module_basis(dst);
  std::map<Exponent2, size_t, GrlexLess> dindex;
  for (size_t i = 0; i < dbasis.size(); ++i) dindex[dbasis[i]] = i;

  std::map<std::pair<int, int>, std::vector<size_t>> words_by_bd;
  for (size_t w = 0; w < word_ops.size(); ++w) {
    if (word_ops[w].is_zero()) continue;
    auto parts = bidegree_decompose(word_ops[w]);
    if (parts.size() != 1)
      throw std::logic_error("block word is not bidegree-homogeneous");
    BiDegree d = parts.begin()->first;
    words_by_bd[{d.dx, d.dy}].push_back(w);
  }
  for (auto& [bd, list] : words_by_bd)
    std::stable_sort(list.begin(), list.end(), [&](size_t a, size_t b) {
      return word_deg[a] < word_deg[b];
    });

  for (const auto& [bd, part] : bidegree_decompose(T)) {
    auto [cmp, ker] = kernel_split(part, src);
    (void)ker;
    if (nonpositive_reachability && bd.dy > 0) {
      out.residue += cmp;
      continue;
    }
    std::vector<std::pair<size_t, size_t>> pairs;  // (dst index, src index)
    for (size_t s = 0; s < sbasis.size(); ++s) {
      Exponent2 target{sbasis[s].i + bd.dx, sbasis[s].j + bd.dy};
      auto it = dindex.find(target);
      if (it != dindex.end()) pairs.push_back({it->second, s});
    }
    QVec b(pairs.size(), QQ(0));
    bool nonzero = false;
    for (size_t row = 0; row < pairs.size(); ++row) {
      auto [di, si] = pairs[row];
      Poly2 image = apply(part, Poly2::monomial(sbasis[si].i, sbasis[si].j));
      b[row] = image.coeff(dbasis[di].i, dbasis[di].j);
      nonzero = nonzero || b[row] != 0;
    }
    if (!nonzero) continue;
    auto wit = words_by_bd.find({bd.dx, bd.dy});
    if (wit == words_by_bd.end())
      throw std::logic_error("block express: no words at acting bidegree");
    const std::vector<size_t>& list = wit->second;

    std::vector<int> caps;
    for (size_t idx : list)
      if (caps.empty() || caps.back() != word_deg[idx])
        caps.push_back(word_deg[idx]);
    bool solved = false;
    for (int cap : caps) {
      size_t ncols = 0;
      while (ncols < list.size() && word_deg[list[ncols]] <= cap) ++ncols;
      QMat A(pairs.size(), ncols);
      for (size_t c = 0; c < ncols; ++c) {
        const DiffOp& op = word_ops[list[c]];
        for (size_t row = 0; row < pairs.size(); ++row) {
          auto [di, si] = pairs[row];
          Poly2 image =
              apply(op, Poly2::monomial(sbasis[si].i, sbasis[si].j));
          A.at(row, c) = image.coeff(dbasis[di].i, dbasis[di].j);
        }
      }
      if (auto x = solve(A, b)) {
        for (size_t c = 0; c < ncols; ++c)
          if ((*x)[c] != 0) out.coeffs[list[c]] += (*x)[c];
        out.degree = std::max(out.degree, cap);
        solved = true;
        break;
      }
    }
    if (!solved)
      throw std::logic_error("block express: action not in word span");
  }
  return out;
}

GeneratorFamily component_scalar_family(const SuperFamily& fam, int comp) {
  switch (fam.kind) {
    case SuperKind::RectSuper:
      return comp == 1 ? GeneratorFamily::g11(fam.n - fam.delta, fam.m)
                       : GeneratorFamily::g11(fam.n, fam.m - fam.gamma);
    case SuperKind::TriSuper:
      return comp == 1 ? GeneratorFamily::g15(fam.n - fam.delta)
                       : GeneratorFamily::g15(fam.n);
    case SuperKind::StairSuper:
      return comp == 1 ? GeneratorFamily::g24(fam.r, fam.p - 1)
                       : GeneratorFamily::g24(fam.r, fam.p);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Rank2Decomposition rank2_express(const MatDiffOp& T, const SuperFamily& fam) {
  ModuleSpec c1 = fam.component1(), c2 = fam.component2();
  action_matrix_hom(T.t11, c1, c1);
  action_matrix_hom(T.t12, c2, c1);
  action_matrix_hom(T.t21, c1, c2);
  action_matrix_hom(T.t22, c2, c2);

  bool one_var_pair = fam.kind == SuperKind::RectSuper;
  Rank2Decomposition out;

  // Diagonal blocks: the scalar engine over the component's own family, with
  // a projection head keeping the two blocks independent.
  for (int comp = 1; comp <= 2; ++comp) {
    const DiffOp& blockT = comp == 1 ? T.t11 : T.t22;
    const ModuleSpec& spec = comp == 1 ? c1 : c2;
    Decomposition dec =
        express(blockT, component_scalar_family(fam, comp), spec);
    for (const auto& [w, coeff] : dec.word_coefficients) {
      MatWord mw;
      mw.head = comp == 1 ? "P1" : "P2";
      mw.factors = tail_from_scalar(w, one_var_pair);
      out.word_coefficients.push_back({mw, coeff});
    }
    (comp == 1 ? out.kernel_remainder.t11 : out.kernel_remainder.t22) =
        dec.kernel_remainder;
    (comp == 1 ? out.residue.t11 : out.residue.t22) = dec.residue;
    out.min_poly_degree = std::max(out.min_poly_degree, dec.min_poly_degree);
  }

  // Off-diagonal blocks: rectangular solves over the odd word lists.
  int kmax = 0;
  switch (fam.kind) {
    case SuperKind::RectSuper:
      kmax = static_cast<int>(fam.n + fam.m + fam.delta + fam.gamma);
      break;
    case SuperKind::TriSuper:
      kmax = static_cast<int>(fam.n + fam.delta);
      break;
    case SuperKind::StairSuper:
      kmax = static_cast<int>(fam.p + fam.p / fam.r + 1);
      break;
  }
  Rank2Words words = rank2_basis(fam, kmax);
  bool stair = fam.kind == SuperKind::StairSuper;
  std::map<std::string, MatDiffOp> table = word_factor_table(fam);

  struct OddBlock {
    const std::vector<MatWord>* list;
    DiffOp MatDiffOp::*entry;
    const ModuleSpec* src;
    const ModuleSpec* dst;
  };
  for (const OddBlock& blk :
       {OddBlock{&words.minus, &MatDiffOp::t21, &c1, &c2},
        OddBlock{&words.plus, &MatDiffOp::t12, &c2, &c1}}) {
    std::vector<DiffOp> ops;
    std::vector<int> degs;
    std::vector<size_t> keep;
    for (size_t i = 0; i < blk.list->size(); ++i) {
      const MatWord& w = (*blk.list)[i];
      MatDiffOp full = realize_with(w, table);
      const DiffOp& op = full.*(blk.entry);
      if (op.is_zero()) continue;
      const MatDiffOp& head_op = table.at(w.head);
      int head_order = std::max(head_op.t12.order(), head_op.t21.order());
      keep.push_back(i);
      ops.push_back(op);
      degs.push_back(w.tail_degree() + std::max(head_order, 0));
    }
    BlockExpressResult r = block_express(T.*(blk.entry), ops, degs, *blk.src,
                                         *blk.dst, stair);
    DiffOp expressed;
    for (const auto& [local, c] : r.coeffs) {
      out.word_coefficients.push_back({(*blk.list)[keep[local]], c});
      expressed += c * ops[local];
    }
    DiffOp remainder = T.*(blk.entry) - r.residue - expressed;
    if (!kernel_split(remainder, *blk.src).first.is_zero())
      throw std::logic_error("rank2 express: remainder does not annihilate");
    out.kernel_remainder.*(blk.entry) = remainder;
    out.residue.*(blk.entry) = r.residue;
    out.min_poly_degree = std::max(out.min_poly_degree, r.degree);
  }
  return out;
}

}  // namespace weyl
