#include "weyl/modules.hpp"

#include <cctype>
#include <sstream>

namespace weyl {

ModuleSpec ModuleSpec::poly1d(long n) {
  if (n < 0) throw std::invalid_argument("P(n): n must be >= 0");
  ModuleSpec s;
  s.kind = ModuleKind::Poly1D;
  s.n = n;
  return s;
}

ModuleSpec ModuleSpec::rect(long n, long m) {
  if (n < 0 || m < 0) throw std::invalid_argument("R(n,m): need n,m >= 0");
  ModuleSpec s;
  s.kind = ModuleKind::Rect;
  s.n = n;
  s.m = m;
  return s;
}

ModuleSpec ModuleSpec::tri(long n) {
  if (n < 0) throw std::invalid_argument("T(n): n must be >= 0");
  ModuleSpec s;
  s.kind = ModuleKind::Tri;
  s.n = n;
  return s;
}

ModuleSpec ModuleSpec::stair(long r, long p, long q) {
  if (r < 1) throw std::invalid_argument("S(r,p,q): r must be >= 1");
  if (p < 0 || q < 0) throw std::invalid_argument("S(r,p,q): need p,q >= 0");
  ModuleSpec s;
  s.kind = ModuleKind::Stair;
  s.r = r;
  s.p = p;
  s.q = q;
  return s;
}

namespace {

std::vector<long> parse_arg_list(const std::string& text, size_t open) {
  if (open >= text.size() || text[open] != '(')
    throw std::invalid_argument("module spec: expected '(' in \"" + text + "\"");
  size_t close = text.find(')', open);
  if (close == std::string::npos || text.find_first_not_of(" \t", close + 1) !=
                                        std::string::npos)
    throw std::invalid_argument("module spec: unbalanced \"" + text + "\"");
  std::vector<long> args;
  std::string body = text.substr(open + 1, close - open - 1);
  std::istringstream in(body);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    size_t pos = 0;
    long v = std::stol(piece, &pos);
    if (piece.find_first_not_of(" \t", pos) != std::string::npos)
      throw std::invalid_argument("module spec: bad integer \"" + piece + "\"");
    args.push_back(v);
  }
  return args;
}

}  // namespace

ModuleSpec ModuleSpec::parse(const std::string& text) {
  size_t start = text.find_first_not_of(" \t");
  if (start == std::string::npos)
    throw std::invalid_argument("module spec: empty string");
  char kind = text[start];
  std::vector<long> a = parse_arg_list(text, start + 1);
  auto want = [&](size_t k) {
    if (a.size() != k)
      throw std::invalid_argument("module spec: wrong arity in \"" + text +
                                  "\"");
  };
  switch (kind) {
    case 'P':
      want(1);
      return poly1d(a[0]);
    case 'R':
      want(2);
      return rect(a[0], a[1]);
    case 'T':
      want(1);
      return tri(a[0]);
    case 'S':
      want(3);
      return stair(a[0], a[1], a[2]);
    default:
      throw std::invalid_argument("module spec: unknown kind in \"" + text +
                                  "\"");
  }
}

std::string ModuleSpec::str() const {
  std::ostringstream out;
  switch (kind) {
    case ModuleKind::Poly1D:
      out << "P(" << n << ")";
      break;
    case ModuleKind::Rect:
      out << "R(" << n << "," << m << ")";
      break;
    case ModuleKind::Tri:
      out << "T(" << n << ")";
      break;
    case ModuleKind::Stair:
      out << "S(" << r << "," << p << "," << q << ")";
      break;
  }
  return out.str();
}

bool ModuleSpec::contains(Exponent2 e) const {
  if (e.i < 0 || e.j < 0) return false;
  switch (kind) {
    case ModuleKind::Poly1D:
      return e.j == 0 && e.i <= n;
    case ModuleKind::Rect:
      return e.i <= n && e.j <= m;
    case ModuleKind::Tri:
      return e.i + e.j <= n;
    case ModuleKind::Stair:
      return e.i + r * e.j <= p && e.j <= q;
  }
  return false;
}

std::vector<Exponent2> module_basis(const ModuleSpec& spec) {
  long max_i = 0, max_j = 0;
  switch (spec.kind) {
    case ModuleKind::Poly1D:
      max_i = spec.n;
      break;
    case ModuleKind::Rect:
      max_i = spec.n;
      max_j = spec.m;
      break;
    case ModuleKind::Tri:
      max_i = max_j = spec.n;
      break;
    case ModuleKind::Stair:
      max_i = spec.p;
      max_j = spec.q;
      break;
  }
  std::vector<Exponent2> basis;
  for (long i = 0; i <= max_i; ++i)
    for (long j = 0; j <= max_j; ++j) {
      Exponent2 e{static_cast<int>(i), static_cast<int>(j)};
      if (spec.contains(e)) basis.push_back(e);
    }
  std::sort(basis.begin(), basis.end(), GrlexLess{});
  return basis;
}

long module_dim(const ModuleSpec& spec) {
  switch (spec.kind) {
    case ModuleKind::Poly1D:
      return spec.n + 1;
    case ModuleKind::Rect:
      return (spec.n + 1) * (spec.m + 1);
    case ModuleKind::Tri:
      return (spec.n + 1) * (spec.n + 2) / 2;
    case ModuleKind::Stair: {
      long qe = std::min(spec.q, spec.p / spec.r);  // rows past p/r are empty
      return (qe + 1) * (spec.p + 1) - spec.r * qe * (qe + 1) / 2;
    }
  }
  return 0;
}

std::optional<Exponent2> preservation_witness(const DiffOp& T,
                                              const ModuleSpec& spec) {
  for (Exponent2 e : module_basis(spec)) {
    Poly2 image = apply(T, Poly2::monomial(e.i, e.j));
    for (const auto& [mono, c] : image.terms())
      if (!spec.contains(mono)) return e;
  }
  return std::nullopt;
}

bool preserves(const DiffOp& T, const ModuleSpec& spec) {
  return !preservation_witness(T, spec).has_value();
}

std::pair<DiffOp, DiffOp> kernel_split(const DiffOp& T,
                                       const ModuleSpec& spec) {
  DiffOp complement, kernel;
  for (const auto& [deriv, coeff] : T.terms()) {
    if (spec.kills_module(deriv))
      kernel.add_term(coeff, deriv.i, deriv.j);
    else
      complement.add_term(coeff, deriv.i, deriv.j);
  }
  return {complement, kernel};
}

DiffOp lift_hom(const QMat& M, const ModuleSpec& src, const ModuleSpec& dst) {
  std::vector<Exponent2> sbasis = module_basis(src);
  std::vector<Exponent2> dbasis = module_basis(dst);
  if (M.rows != dbasis.size() || M.cols != sbasis.size())
    throw std::invalid_argument("lift_hom: matrix shape does not match bases");

  // Determine coefficients in graded-lex order of the derivative index: when
  // the operator is applied to x^a y^b, every term with derivative index
  // strictly below (a,b) is already known, and the (a,b) term contributes
  // exactly a! b! times its coefficient.
  DiffOp lift;
  for (size_t col = 0; col < sbasis.size(); ++col) {
    Exponent2 mu = sbasis[col];
    Poly2 target;
    for (size_t row = 0; row < dbasis.size(); ++row)
      target.add_term(dbasis[row].i, dbasis[row].j, M.at(row, col));
    for (const auto& [deriv, coeff] : lift.terms()) {
      if (deriv.i > mu.i || deriv.j > mu.j) continue;
      QQ scale(falling_factorial(mu.i, deriv.i) *
               falling_factorial(mu.j, deriv.j));
      target -= coeff * Poly2::monomial(mu.i - deriv.i, mu.j - deriv.j, scale);
    }
    if (!target.is_zero()) {
      QQ scale(falling_factorial(mu.i, mu.i) * falling_factorial(mu.j, mu.j));
      target *= QQ(1) / scale;
      lift.add_term(target, mu.i, mu.j);
    }
  }
  return lift;
}

DiffOp lift_endomorphism(const QMat& M, const ModuleSpec& spec) {
  return lift_hom(M, spec, spec);
}

}  // namespace weyl
