#pragma once

#include <map>
#include <optional>
#include <vector>

#include "weyl/rational.hpp"

namespace weyl {

using QVec = std::vector<QQ>;

/// Dense row-major matrix over QQ.
struct QMat {
  size_t rows = 0, cols = 0;
  std::vector<QQ> a;

  QMat() = default;
  QMat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

  QQ& at(size_t r, size_t c) { return a[r * cols + c]; }
  const QQ& at(size_t r, size_t c) const { return a[r * cols + c]; }

  static QMat identity(size_t n);
  friend bool operator==(const QMat&, const QMat&) = default;
};

QMat mat_mul(const QMat& A, const QMat& B);

/// Exact rank by fraction-free (Bareiss) elimination on a denominator-cleared
/// integer copy.
size_t rank(const QMat& A);

/// One exact solution of A x = b with free variables set to zero, or nullopt
/// when the system is inconsistent. Pivots are chosen left to right, so the
/// caller controls preference by column order.
std::optional<QVec> solve(const QMat& A, const QVec& b);

/// Basis of the right nullspace of A.
std::vector<QVec> nullspace(const QMat& A);

/// Incremental echelon span of sparse vectors keyed by K; used for exact
/// span-membership and dimension tracking without fixing a global coordinate
/// list up front.
template <class K, class Cmp = std::less<K>>
class SparseReducer {
 public:
  using Vec = std::map<K, QQ, Cmp>;

  /// Eliminates v's leading entries against stored rows; empty result means
  /// v lies in the span.
  Vec reduce(Vec v) const {
    while (!v.empty()) {
      auto lead = v.begin();
      auto row = rows_.find(lead->first);
      if (row == rows_.end()) break;
      QQ c = lead->second;
      for (const auto& [k, val] : row->second) {
        auto [it, inserted] = v.try_emplace(k, 0);
        it->second -= c * val;
        if (it->second == 0) v.erase(it);
      }
    }
    return v;
  }

  /// Adds v to the span; returns true when the dimension grew.
  bool add(Vec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    QQ lead = v.begin()->second;
    for (auto& [k, val] : v) val /= lead;
    rows_.emplace(v.begin()->first, std::move(v));
    return true;
  }

  bool contains(Vec v) const { return reduce(std::move(v)).empty(); }
  size_t dim() const { return rows_.size(); }

 private:
  std::map<K, Vec, Cmp> rows_;
};

}  // namespace weyl
