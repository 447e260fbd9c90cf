#pragma once

#include <array>
#include <map>
#include <vector>

#include "weyl/linalg.hpp"
#include "weyl/superops.hpp"

namespace weyl::testing {

/// Flattens an operator into a sparse vector keyed by (deriv i, deriv j,
/// mono i, mono j) for exact span/rank arithmetic on operators themselves.
using OpKey = std::array<int, 4>;

inline std::map<OpKey, QQ> op_vector(const DiffOp& t) {
  std::map<OpKey, QQ> v;
  for (const auto& [d, f] : t.terms())
    for (const auto& [m, c] : f.terms()) v[{d.i, d.j, m.i, m.j}] = c;
  return v;
}

/// Matrix-operator version; the leading index selects the block.
using MatOpKey = std::array<int, 5>;

inline std::map<MatOpKey, QQ> mat_op_vector(const MatDiffOp& m) {
  std::map<MatOpKey, QQ> v;
  const DiffOp* blocks[4] = {&m.t11, &m.t12, &m.t21, &m.t22};
  for (int b = 0; b < 4; ++b)
    for (const auto& [d, f] : blocks[b]->terms())
      for (const auto& [mo, c] : f.terms()) v[{b, d.i, d.j, mo.i, mo.j}] = c;
  return v;
}

inline long mat_span_dim(const std::vector<MatDiffOp>& ops) {
  SparseReducer<MatOpKey> red;
  for (const MatDiffOp& op : ops) red.add(mat_op_vector(op));
  return static_cast<long>(red.dim());
}

/// True when every bidegree-homogeneous part of t raises the y-degree.
inline bool strictly_positive_y(const DiffOp& t) {
  if (t.is_zero()) return false;
  for (const auto& [d, part] : bidegree_decompose(t))
    if (d.dy <= 0) return false;
  return true;
}

}  // namespace weyl::testing
