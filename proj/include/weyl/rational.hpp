#pragma once

#include <gmpxx.h>

#include <string>

namespace weyl {

/// Exact rational scalar. mpq_class keeps values reduced with a positive
/// denominator, so equality is plain value equality and nothing ever rounds.
using QQ = mpq_class;

inline QQ qq(long num, long den = 1) {
  QQ q(num, den);
  q.canonicalize();
  return q;
}

/// "p/q" for non-integers, plain "p" otherwise.
inline std::string rational_str(const QQ& q) { return q.get_str(); }

/// n! / (n-k)! as an exact integer; 1 when k == 0, 0 when k > n.
inline mpz_class falling_factorial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class acc = 1;
  for (unsigned long s = 0; s < k; ++s) acc *= mpz_class(n - s);
  return acc;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace weyl
