#include "weyl/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace weyl {

QMat QMat::identity(size_t n) {
  QMat I(n, n);
  for (size_t i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

QMat mat_mul(const QMat& A, const QMat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  QMat C(A.rows, B.cols);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t k = 0; k < A.cols; ++k) {
      const QQ& aik = A.at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

size_t rank(const QMat& A) {
  // Scale each row by the lcm of its denominators: integer entries, same rank.
  std::vector<mpz_class> m(A.rows * A.cols);
  for (size_t i = 0; i < A.rows; ++i) {
    mpz_class l = 1;
    for (size_t j = 0; j < A.cols; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), A.at(i, j).get_den_mpz_t());
    for (size_t j = 0; j < A.cols; ++j) {
      QQ v = A.at(i, j) * QQ(l);
      assert(v.get_den() == 1);
      m[i * A.cols + j] = v.get_num();
    }
  }
  auto at = [&](size_t i, size_t j) -> mpz_class& { return m[i * A.cols + j]; };

  size_t r = 0;
  mpz_class prev = 1;
  for (size_t c = 0; c < A.cols && r < A.rows; ++c) {
    size_t pr = r;
    while (pr < A.rows && at(pr, c) == 0) ++pr;
    if (pr == A.rows) continue;
    if (pr != r)
      for (size_t j = c; j < A.cols; ++j) std::swap(at(pr, j), at(r, j));
    for (size_t i = r + 1; i < A.rows; ++i) {
      for (size_t j = c + 1; j < A.cols; ++j) {
        mpz_class num = at(r, c) * at(i, j) - at(i, c) * at(r, j);
        assert(mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t()));
        mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, c) = 0;
    }
    prev = at(r, c);
    ++r;
  }
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot column per eliminated row.
std::vector<size_t> rref(QMat& M) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < M.cols && r < M.rows; ++c) {
    size_t pr = r;
    while (pr < M.rows && M.at(pr, c) == 0) ++pr;
    if (pr == M.rows) continue;
    if (pr != r)
      for (size_t j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(r, j));
    QQ inv = M.at(r, c);
    for (size_t j = c; j < M.cols; ++j) M.at(r, j) /= inv;
    for (size_t i = 0; i < M.rows; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      QQ f = M.at(i, c);
      for (size_t j = c; j < M.cols; ++j) M.at(i, j) -= f * M.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<QVec> solve(const QMat& A, const QVec& b) {
  if (b.size() != A.rows) throw std::invalid_argument("solve: shape mismatch");
  QMat M(A.rows, A.cols + 1);
  for (size_t i = 0; i < A.rows; ++i) {
    for (size_t j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
    M.at(i, A.cols) = b[i];
  }
  std::vector<size_t> pivots = rref(M);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
  QVec x(A.cols, QQ(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = M.at(r, A.cols);
  return x;
}

std::vector<QVec> nullspace(const QMat& A) {
  QMat M = A;
  std::vector<size_t> pivots = rref(M);
  std::vector<bool> is_pivot(A.cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (size_t c = 0; c < A.cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(A.cols, QQ(0));
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -M.at(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace weyl
