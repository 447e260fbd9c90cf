#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weyl/generators.hpp"

namespace weyl {

/// An ordered product of generator powers, composed left to right:
/// {{"J1",2},{"J7",1}} realizes as J1 o J1 o J7.
struct MonomialWord {
  std::vector<std::pair<std::string, int>> factors;

  int degree() const;
  /// "J1^2*J7"; the empty word prints as "1".
  std::string str() const;
  friend bool operator==(const MonomialWord&, const MonomialWord&) = default;
};

DiffOp realize(const MonomialWord& w, const GeneratorFamily& fam);
/// Same, against a prebuilt name -> operator map (avoids rebuilding it in
/// loops over many words).
DiffOp realize(const MonomialWord& w,
               const std::map<std::string, DiffOp>& gens);
BiDegree word_bidegree(const MonomialWord& w, const GeneratorFamily& fam);

struct LatticeLength {
  bool reachable = false;
  int length = 0;
};

/// Fewest generator factors needed to reach the bidegree `target`, walking the
/// step set of nonzero generator bidegrees (breadth-first search).
LatticeLength min_length(const GeneratorFamily& fam, BiDegree target);

/// Closed forms the search must agree with: hexagonal distance for the
/// triangle family, and the staircase distance (unreachable when dy > 0).
int hex_min_length(BiDegree d);
LatticeLength staircase_min_length(long r, BiDegree d);

/// One canonical word of degree l per bidegree at lattice distance exactly l.
std::vector<MonomialWord> maximal_length_monomials(const GeneratorFamily& fam,
                                                   int l);

/// Spanning words for images of degree-bounded word algebras:
/// basis_sl3(n,k) has sum_{t<=k} (t+1)^3 words and realizes to a basis of the
/// operators reachable with at most k factors of g15(n).
std::vector<MonomialWord> basis_sl3(long n, int k);
/// Same for g24(r,p) with at most k factors.
std::vector<MonomialWord> basis_g24_image(long r, long p, int k);
/// Finite list spanning the full realized algebra of g24(r,p) on S(r,p,q).
std::vector<MonomialWord> basis_g24_effective(long r, long p, long q);

/// Rank of the realized operators as vectors of polynomial coefficients.
long realized_rank(const std::vector<MonomialWord>& words,
                   const GeneratorFamily& fam);

/// Kernel dimension of the realization map on products of at most k factors
/// (J+)^a (J-)^b (J0)^c for sl2(n); the result does not depend on n.
long enveloping_kernel_dim_sl2(long n, int k);

/// Kernel dimensions of the leading-symbol substitution on commutative
/// monomials of degree exactly k in the generator symbols.
long symbol_kernel_dim_sl2(int k);
long symbol_kernel_dim_sl3(int k);

}  // namespace weyl
