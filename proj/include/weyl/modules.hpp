#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weyl/diffop.hpp"
#include "weyl/linalg.hpp"

namespace weyl {

enum class ModuleKind { Poly1D, Rect, Tri, Stair };

/// A finite-dimensional monomial submodule of QQ[x,y]:
///   P(n)     = span{ x^i           : i <= n }
///   R(n,m)   = span{ x^i y^j       : i <= n, j <= m }
///   T(n)     = span{ x^i y^j       : i + j <= n }
///   S(r,p,q) = span{ x^i y^j       : i + r j <= p, j <= q }
struct ModuleSpec {
  ModuleKind kind = ModuleKind::Poly1D;
  long n = 0, m = 0, r = 0, p = 0, q = 0;

  static ModuleSpec poly1d(long n);
  static ModuleSpec rect(long n, long m);
  static ModuleSpec tri(long n);
  static ModuleSpec stair(long r, long p, long q);

  /// Text forms: P(n), R(n,m), T(n), S(r,p,q).
  static ModuleSpec parse(const std::string& text);
  std::string str() const;

  bool contains(Exponent2 e) const;
  /// A monomial differential operator x^c y^d Dx^a Dy^b kills the whole module
  /// exactly when its derivative index (a,b) lies outside the exponent set.
  bool kills_module(Exponent2 deriv) const { return !contains(deriv); }

  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

/// Monomial basis in graded-lex order (1, x, y, x^2, x y, y^2, ...).
std::vector<Exponent2> module_basis(const ModuleSpec& spec);

/// Closed-form dimension; always equals module_basis(spec).size().
long module_dim(const ModuleSpec& spec);

/// True when T maps every basis monomial back into the module.
bool preserves(const DiffOp& T, const ModuleSpec& spec);

/// First basis monomial (graded-lex) whose image leaves the module.
std::optional<Exponent2> preservation_witness(const DiffOp& T,
                                              const ModuleSpec& spec);

/// Splits T = complement part + kernel part by derivative index: the kernel
/// part collects the terms whose derivative index kills the module.
std::pair<DiffOp, DiffOp> kernel_split(const DiffOp& T,
                                       const ModuleSpec& spec);

/// Unique operator with derivative indices inside `spec`'s exponent set whose
/// action matrix on the module equals M (rows and columns indexed by
/// module_basis order). Inverse of the action-matrix map on that complement.
DiffOp lift_endomorphism(const QMat& M, const ModuleSpec& spec);

/// Rectangular version: M has rows indexed by module_basis(dst) and columns by
/// module_basis(src); the result has derivative indices inside src's exponent
/// set and maps src into the span of dst's basis with action matrix M.
DiffOp lift_hom(const QMat& M, const ModuleSpec& src, const ModuleSpec& dst);

}  // namespace weyl
