#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "weyl/decompose.hpp"

namespace weyl {

/// 2x2 matrix of differential operators acting on pairs (f1, f2); entry t_ij
/// maps component j into component i.
struct MatDiffOp {
  DiffOp t11, t12, t21, t22;

  static MatDiffOp diag(const DiffOp& a, const DiffOp& d);
  /// b * sigma+: sends component 2 to component 1.
  static MatDiffOp upper(const DiffOp& b);
  /// c * sigma-: sends component 1 to component 2.
  static MatDiffOp lower(const DiffOp& c);
  static MatDiffOp identity();
  static MatDiffOp sigma3();  // diag(1, -1)

  bool is_zero() const;
  bool is_diagonal() const;      // t12 = t21 = 0
  bool is_off_diagonal() const;  // t11 = t22 = 0

  MatDiffOp& operator+=(const MatDiffOp& o);
  MatDiffOp& operator-=(const MatDiffOp& o);
  MatDiffOp& operator*=(const QQ& c);
  friend MatDiffOp operator+(MatDiffOp a, const MatDiffOp& b) { return a += b; }
  friend MatDiffOp operator-(MatDiffOp a, const MatDiffOp& b) { return a -= b; }
  friend MatDiffOp operator*(const QQ& c, MatDiffOp a) { return a *= c; }
  MatDiffOp operator-() const;
  friend bool operator==(const MatDiffOp&, const MatDiffOp&) = default;
};

MatDiffOp mat_compose(const MatDiffOp& a, const MatDiffOp& b);

enum class Parity { Even, Odd };

/// Anticommutator when both operands are off-diagonal (odd), commutator
/// otherwise; throws std::domain_error when an operand mixes diagonal and
/// off-diagonal parts.
MatDiffOp supercommutator(const MatDiffOp& a, const MatDiffOp& b);

enum class SuperKind { RectSuper, TriSuper, StairSuper };

/// A family of even and odd matrix operators preserving a pair of modules:
///   sR(n,m,D,G): R(n-D, m) + R(n, m-G)
///   sT(n,D)    : T(n-D)    + T(n)
///   sS(r,p)    : S(r,p-1,q) + S(r,p,q) with q = floor(p/r)
struct SuperFamily {
  SuperKind kind = SuperKind::RectSuper;
  long n = 0, m = 0, delta = 0, gamma = 0, r = 0, p = 0;

  static SuperFamily rect(long n, long m, long delta, long gamma);
  static SuperFamily tri(long n, long delta);
  static SuperFamily stair(long r, long p);

  /// Text forms: sR(n,m,D,G), sT(n,D), sS(r,p).
  static SuperFamily parse(const std::string& text);
  std::string str() const;

  ModuleSpec component1() const;
  ModuleSpec component2() const;
  /// Size of the published generator list (central elements included).
  size_t generator_count() const;

  friend bool operator==(const SuperFamily&, const SuperFamily&) = default;
};

struct NamedMatOp {
  std::string name;
  MatDiffOp op;
  Parity parity = Parity::Even;
};

/// The family's full published generator list.
std::vector<NamedMatOp> build_super_generators(const SuperFamily& fam);

/// Same list with central scalar generators dropped; when every bookkeeping
/// diagonal generator (J, and K for the rectangle family) is central, the
/// grading element sigma3 is adjoined instead.
std::vector<NamedMatOp> effective_super_generators(
    const SuperFamily& fam, std::vector<std::string>* dropped = nullptr,
    bool* adjoined_sigma3 = nullptr);

struct ClosureResult {
  bool stabilized = false;
  long dim = 0;  // span dimension modulo the identity
  long even_dim = 0;
  long odd_dim = 0;
  /// Some bracket landed outside the identity-free span but inside the span
  /// with identity (e.g. an anticommutator equal to the identity).
  bool identity_appeared = false;
  std::vector<long> growth;  // dim after each bracket round, starting point first
  std::vector<long> derived_dims;  // derived series dims (when stabilized)
  std::vector<std::string> dropped_central;
  bool adjoined_sigma3 = false;
  int rounds = 0;
};

/// Iterated bracket closure of the effective generators: each round brackets
/// the generators against the new elements (left-normed brackets span the
/// generated superalgebra). Stops when a round adds nothing or after
/// degree_cap rounds.
ClosureResult closure_analysis(const SuperFamily& fam, int degree_cap = 6);

struct InvarianceReport {
  std::vector<std::string> names;
  bool generator_coeffs_match = true;
  /// Identity coefficients match on all pairs except the exempt ones.
  bool identity_coeffs_match = true;
  /// Odd-odd identity coefficients of the triangle family are allowed to vary
  /// with n; true when they actually do somewhere in the grid.
  bool exempt_identity_varies = false;
};

/// Compares bracket tables of the effective generators across a parameter
/// grid of families of the same kind and gaps.
InvarianceReport structure_constant_invariance(
    const std::vector<SuperFamily>& grid);

/// Label for a stabilized closure from a small built-in table keyed by
/// (even dim, odd dim, derived-series signature); empty when nothing matches
/// or the closure did not stabilize.
std::string identify_structure(const ClosureResult& res);

/// A word over a super family: an optional head factor (projection "P1"/"P2",
/// one odd generator, "1", or "sigma3") composed with powers of even diagonal
/// generators, left to right.
struct MatWord {
  std::string head = "1";
  std::vector<std::pair<std::string, int>> factors;

  int tail_degree() const;
  std::string str() const;
  friend bool operator==(const MatWord&, const MatWord&) = default;
};

MatDiffOp realize(const MatWord& w, const SuperFamily& fam);

/// The family's spanning monomial words through order k, grouped as even
/// words (projection heads P1/P2, or 1/sigma3 for the rectangle family),
/// sigma+ words, and sigma- words.
struct Rank2Words {
  std::vector<MatWord> even;
  std::vector<MatWord> plus;
  std::vector<MatWord> minus;
  std::vector<MatWord> all() const;
};

Rank2Words rank2_basis(const SuperFamily& fam, int k);

/// The full sigma- word list of the staircase family (no order cap); its size
/// is the closed-form count tested in the suite. q defaults to floor(p/r);
/// smaller q builds the words for the truncated modules.
std::vector<MatWord> stair_sigma_minus_words(long r, long p, long q = -1);

struct Rank2Decomposition {
  std::vector<std::pair<MatWord, QQ>> word_coefficients;
  MatDiffOp kernel_remainder;
  MatDiffOp residue;
  int min_poly_degree = 0;

  Decomposition::Status status() const {
    if (!residue.is_zero()) return Decomposition::Status::NotLieAlgebraic;
    if (!kernel_remainder.is_zero()) return Decomposition::Status::NeedsKernel;
    return Decomposition::Status::Expressible;
  }
};

/// Blockwise decomposition of a matrix operator over the family's words:
/// T = sum(coeff * realized word) + kernel_remainder + residue, exactly.
Rank2Decomposition rank2_express(const MatDiffOp& T, const SuperFamily& fam);

}  // namespace weyl
