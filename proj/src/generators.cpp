#include "weyl/generators.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace weyl {

GeneratorFamily GeneratorFamily::sl2(long n) {
  if (n < 0) throw std::invalid_argument("sl2(n): n must be >= 0");
  GeneratorFamily f;
  f.kind = FamilyKind::Sl2_1D;
  f.n = n;
  return f;
}

GeneratorFamily GeneratorFamily::g11(long n, long m) {
  if (n < 0 || m < 0) throw std::invalid_argument("g11(n,m): need n,m >= 0");
  GeneratorFamily f;
  f.kind = FamilyKind::G11;
  f.n = n;
  f.m = m;
  return f;
}

GeneratorFamily GeneratorFamily::g15(long n) {
  if (n < 0) throw std::invalid_argument("g15(n): n must be >= 0");
  GeneratorFamily f;
  f.kind = FamilyKind::G15;
  f.n = n;
  return f;
}

GeneratorFamily GeneratorFamily::g24(long r, long p) {
  if (r < 1) throw std::invalid_argument("g24(r,p): r must be >= 1");
  if (p < 0) throw std::invalid_argument("g24(r,p): p must be >= 0");
  GeneratorFamily f;
  f.kind = FamilyKind::G24;
  f.r = r;
  f.p = p;
  return f;
}

GeneratorFamily GeneratorFamily::parse(const std::string& text) {
  size_t open = text.find('(');
  size_t close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open ||
      text.find_first_not_of(" \t", close + 1) != std::string::npos)
    throw std::invalid_argument("family: expected name(args) in \"" + text +
                                "\"");
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
      throw std::invalid_argument("family: bad integer \"" + piece + "\"");
    a.push_back(v);
  }
  auto want = [&](size_t k) {
    if (a.size() != k)
      throw std::invalid_argument("family: wrong arity in \"" + text + "\"");
  };
  if (name == "sl2") {
    want(1);
    return sl2(a[0]);
  }
  if (name == "g11") {
    want(2);
    return g11(a[0], a[1]);
  }
  if (name == "g15") {
    want(1);
    return g15(a[0]);
  }
  if (name == "g24") {
    want(2);
    return g24(a[0], a[1]);
  }
  throw std::invalid_argument("family: unknown name \"" + name + "\"");
}

std::string GeneratorFamily::str() const {
  std::ostringstream out;
  switch (kind) {
    case FamilyKind::Sl2_1D:
      out << "sl2(" << n << ")";
      break;
    case FamilyKind::G11:
      out << "g11(" << n << "," << m << ")";
      break;
    case FamilyKind::G15:
      out << "g15(" << n << ")";
      break;
    case FamilyKind::G24:
      out << "g24(" << r << "," << p << ")";
      break;
  }
  return out.str();
}

size_t GeneratorFamily::generator_count() const {
  switch (kind) {
    case FamilyKind::Sl2_1D:
      return 3;
    case FamilyKind::G11:
      return 6;
    case FamilyKind::G15:
      return 8;
    case FamilyKind::G24:
      return static_cast<size_t>(r) + 5;
  }
  return 0;
}

ModuleSpec GeneratorFamily::default_module() const {
  switch (kind) {
    case FamilyKind::Sl2_1D:
      return ModuleSpec::poly1d(n);
    case FamilyKind::G11:
      return ModuleSpec::rect(n, m);
    case FamilyKind::G15:
      return ModuleSpec::tri(n);
    case FamilyKind::G24:
      return ModuleSpec::stair(r, p, p / r);
  }
  throw std::logic_error("unreachable");
}

bool GeneratorFamily::matches(const ModuleSpec& spec) const {
  switch (kind) {
    case FamilyKind::Sl2_1D:
      return spec.kind == ModuleKind::Poly1D && spec.n == n;
    case FamilyKind::G11:
      return spec.kind == ModuleKind::Rect && spec.n == n && spec.m == m;
    case FamilyKind::G15:
      return spec.kind == ModuleKind::Tri && spec.n == n;
    case FamilyKind::G24:
      return spec.kind == ModuleKind::Stair && spec.r == r && spec.p == p;
  }
  return false;
}

namespace {

DiffOp op_x_pow_d(int a, int b, int i, int j, const QQ& c = QQ(1)) {
  return DiffOp::term(Poly2::monomial(a, b, c), i, j);
}

}  // namespace

std::vector<NamedOp> build_generators(const GeneratorFamily& fam) {
  std::vector<NamedOp> out;
  switch (fam.kind) {
    case FamilyKind::Sl2_1D: {
      DiffOp jp = op_x_pow_d(2, 0, 1, 0);
      jp += op_x_pow_d(1, 0, 0, 0, QQ(-fam.n));
      DiffOp jm = DiffOp::derivative(1, 0);
      DiffOp j0 = op_x_pow_d(1, 0, 1, 0);
      j0 += DiffOp(qq(-fam.n, 2));
      out = {{"J+", jp}, {"J-", jm}, {"J0", j0}};
      break;
    }
    case FamilyKind::G11: {
      for (const NamedOp& g : build_generators(GeneratorFamily::sl2(fam.n)))
        out.push_back(g);
      DiffOp kp = op_x_pow_d(0, 2, 0, 1);
      kp += op_x_pow_d(0, 1, 0, 0, QQ(-fam.m));
      DiffOp km = DiffOp::derivative(0, 1);
      DiffOp k0 = op_x_pow_d(0, 1, 0, 1);
      k0 += DiffOp(qq(-fam.m, 2));
      out.push_back({"K+", kp});
      out.push_back({"K-", km});
      out.push_back({"K0", k0});
      break;
    }
    case FamilyKind::G15: {
      long n = fam.n;
      DiffOp j1 = op_x_pow_d(2, 0, 1, 0);
      j1 += op_x_pow_d(1, 1, 0, 1);
      j1 += op_x_pow_d(1, 0, 0, 0, QQ(-n));
      DiffOp j2 = op_x_pow_d(1, 1, 1, 0);
      j2 += op_x_pow_d(0, 2, 0, 1);
      j2 += op_x_pow_d(0, 1, 0, 0, QQ(-n));
      DiffOp j7 = op_x_pow_d(1, 0, 1, 0);
      j7 += DiffOp(qq(-n, 3));
      DiffOp j8 = op_x_pow_d(0, 1, 0, 1);
      j8 += DiffOp(qq(-n, 3));
      out = {{"J1", j1},
             {"J2", j2},
             {"J3", op_x_pow_d(0, 1, 1, 0)},
             {"J4", DiffOp::derivative(1, 0)},
             {"J5", DiffOp::derivative(0, 1)},
             {"J6", op_x_pow_d(1, 0, 0, 1)},
             {"J7", j7},
             {"J8", j8}};
      break;
    }
    case FamilyKind::G24: {
      long r = fam.r, p = fam.p;
      DiffOp j2 = op_x_pow_d(2, 0, 1, 0);
      j2 += op_x_pow_d(1, 1, 0, 1, QQ(r));
      j2 += op_x_pow_d(1, 0, 0, 0, QQ(-p));
      DiffOp j3 = op_x_pow_d(1, 0, 1, 0);
      j3 += DiffOp(qq(-p, 2));
      out = {{"J1", DiffOp::derivative(1, 0)},
             {"J2", j2},
             {"J3", j3},
             {"J4", op_x_pow_d(0, 1, 0, 1)}};
      for (long i = 0; i <= r; ++i) {
        std::ostringstream name;
        name << "J" << (5 + i);
        out.push_back({name.str(), op_x_pow_d(static_cast<int>(i), 0, 0, 1)});
      }
      break;
    }
  }
  return out;
}

std::map<std::string, BiDegree> generator_bidegrees(
    const GeneratorFamily& fam) {
  std::map<std::string, BiDegree> out;
  for (const NamedOp& g : build_generators(fam)) {
    auto parts = bidegree_decompose(g.op);
    if (parts.size() != 1)
      throw std::domain_error("generator " + g.name +
                              " is not bidegree-homogeneous");
    out[g.name] = parts.begin()->first;
  }
  return out;
}

namespace {

using OpKey = std::array<int, 4>;  // derivative (i,j), monomial (a,b)

std::map<OpKey, QQ> vectorize(const DiffOp& op) {
  std::map<OpKey, QQ> v;
  for (const auto& [deriv, coeff] : op.terms())
    for (const auto& [mono, c] : coeff.terms())
      v[{deriv.i, deriv.j, mono.i, mono.j}] = c;
  return v;
}

}  // namespace

StructureTable verify_closure(const GeneratorFamily& fam) {
  std::vector<NamedOp> gens = build_generators(fam);
  size_t g = gens.size();

  std::vector<std::map<OpKey, QQ>> cols;
  std::map<OpKey, size_t> key_index;
  for (const NamedOp& gen : gens) cols.push_back(vectorize(gen.op));
  cols.push_back(vectorize(DiffOp::identity()));
  for (const auto& col : cols)
    for (const auto& [k, c] : col) key_index.try_emplace(k, key_index.size());

  QMat A(key_index.size(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (const auto& [k, c] : cols[j]) A.at(key_index.at(k), j) = c;

  StructureTable table;
  for (const NamedOp& gen : gens) table.names.push_back(gen.name);
  table.coeffs.assign(g, std::vector<QVec>(g, QVec(g + 1, QQ(0))));

  for (size_t i = 0; i < g; ++i)
    for (size_t j = 0; j < g; ++j) {
      DiffOp c = commutator(gens[i].op, gens[j].op);
      std::map<OpKey, QQ> v = vectorize(c);
      bool in_span = true;
      QVec b(key_index.size(), QQ(0));
      for (const auto& [k, val] : v) {
        auto it = key_index.find(k);
        if (it == key_index.end()) {
          in_span = false;
          break;
        }
        b[it->second] = val;
      }
      std::optional<QVec> x = in_span ? solve(A, b) : std::nullopt;
      if (!x) {
        table.closed = false;
        if (!table.escape)
          table.escape = std::make_pair(gens[i].name, gens[j].name);
        continue;
      }
      // Consistency check: the solutions really reproduce the commutators.
      DiffOp rebuilt;
      for (size_t t = 0; t < g; ++t) rebuilt += (*x)[t] * gens[t].op;
      rebuilt += (*x)[g] * DiffOp::identity();
      if (!(rebuilt == c)) throw std::logic_error("closure solve mismatch");
      table.coeffs[i][j] = *x;
    }
  return table;
}

namespace {

RelationReport check_relations(const std::vector<NamedOp>& gens, long n) {
  std::map<std::string, DiffOp> g;
  for (const NamedOp& it : gens) g[it.name] = it.op;
  QQ c = qq(n, 3);
  DiffOp id = DiffOp::identity();
  auto shifted = [&](const char* name, const QQ& s) {
    return g[name] + s * id;
  };

  std::vector<std::pair<std::string, DiffOp>> lhs_rhs_diffs;
  auto add = [&](const std::string& label, const DiffOp& lhs,
                 const DiffOp& rhs) {
    lhs_rhs_diffs.push_back({label, lhs - rhs});
  };

  add("J1*J3 = J2*(J7+n/3)", compose(g["J1"], g["J3"]),
      compose(g["J2"], shifted("J7", c)));
  add("J1*J4 = J7^2+J7*J8-J7+(n/3)*J8-(n/3)(n/3+1)",
      compose(g["J1"], g["J4"]),
      compose(g["J7"], g["J7"]) + compose(g["J7"], g["J8"]) - g["J7"] +
          c * g["J8"] - (c * (c + 1)) * id);
  add("J1*J5 = J6*(J7+J8-(n/3+1))", compose(g["J1"], g["J5"]),
      compose(g["J6"], g["J7"] + g["J8"] - (c + 1) * id));
  add("J2*J4 = J3*(J7+J8-(n/3+1))", compose(g["J2"], g["J4"]),
      compose(g["J3"], g["J7"] + g["J8"] - (c + 1) * id));
  add("J2*J5 = J7*J8+J8^2+(n/3)*J7-J8-(n/3)(n/3+1)",
      compose(g["J2"], g["J5"]),
      compose(g["J7"], g["J8"]) + compose(g["J8"], g["J8"]) + c * g["J7"] -
          g["J8"] - (c * (c + 1)) * id);
  add("J2*J6 = J1*(J8+n/3)", compose(g["J2"], g["J6"]),
      compose(g["J1"], shifted("J8", c)));
  add("J3*J5 = J4*(J8+n/3)", compose(g["J3"], g["J5"]),
      compose(g["J4"], shifted("J8", c)));
  add("J3*J6 = J7*J8+(n/3)*J7+(n/3+1)*J8+(n/3)(n/3+1)",
      compose(g["J3"], g["J6"]),
      compose(g["J7"], g["J8"]) + c * g["J7"] + (c + 1) * g["J8"] +
          (c * (c + 1)) * id);
  add("J4*J6 = J5*(J7+n/3+1)", compose(g["J4"], g["J6"]),
      compose(g["J5"], shifted("J7", c + 1)));

  RelationReport report;
  for (const auto& [label, diff] : lhs_rhs_diffs) {
    bool ok = diff.is_zero();
    report.checks.push_back({label, ok});
    report.all_pass = report.all_pass && ok;
  }
  return report;
}

}  // namespace

RelationReport verify_relations_sl3(long n) {
  return check_relations(build_generators(GeneratorFamily::g15(n)), n);
}

RelationReport verify_relations_sl3_perturbed(long n) {
  std::vector<NamedOp> gens = build_generators(GeneratorFamily::g15(n));
  for (NamedOp& g : gens)
    if (g.name == "J1") g.op += DiffOp::term(Poly2::x(), 0, 0);
  return check_relations(gens, n);
}

bool verify_casimir_sl2(long n) {
  std::vector<NamedOp> gens = build_generators(GeneratorFamily::sl2(n));
  const DiffOp &jp = gens[0].op, &jm = gens[1].op, &j0 = gens[2].op;
  DiffOp lhs = compose(jp, jm);
  DiffOp rhs = compose(j0, j0) - j0 - qq(n * (n + 2), 4) * DiffOp::identity();
  return lhs == rhs;
}

bool verify_casimir_sl2_broken(long n) {
  std::vector<NamedOp> gens = build_generators(GeneratorFamily::sl2(n));
  const DiffOp &jp = gens[0].op, &jm = gens[1].op, &j0 = gens[2].op;
  DiffOp lhs = compose(jp, jm);
  DiffOp rhs = compose(j0, j0) - j0 -
               (qq(n * (n + 2), 4) + QQ(1)) * DiffOp::identity();
  return lhs == rhs;
}

}  // namespace weyl
