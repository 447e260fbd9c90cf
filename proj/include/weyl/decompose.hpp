#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weyl/modules.hpp"
#include "weyl/words.hpp"

namespace weyl {

struct NotPreserving : std::runtime_error {
  Exponent2 witness;
  NotPreserving(const ModuleSpec& spec, Exponent2 w)
      : std::runtime_error("operator does not preserve " + spec.str() +
                           ": image of basis monomial (" +
                           std::to_string(w.i) + "," + std::to_string(w.j) +
                           ") leaves the module"),
        witness(w) {}
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Matrix of T acting on module_basis(spec), columns indexed by source basis
/// monomials and rows by target basis monomials, both in graded-lex order.
struct ActionMatrix {
  QMat mat;
  std::vector<Exponent2> basis;
};

/// Throws NotPreserving when the image of a basis monomial leaves the module.
ActionMatrix action_matrix(const DiffOp& T, const ModuleSpec& spec);

/// Rectangular version: rows indexed by module_basis(dst); throws
/// NotPreserving(src, witness) when T's image leaves dst's span.
QMat action_matrix_hom(const DiffOp& T, const ModuleSpec& src,
                       const ModuleSpec& dst);

/// Result of expressing T over a generator family on a module:
///   T = sum(coeff * realized word) + kernel_remainder + residue
/// holds exactly as operators. The kernel remainder annihilates the whole
/// module; the residue collects the non-annihilating terms whose bidegree no
/// generator word can reach.
struct Decomposition {
  enum class Status { Expressible, NeedsKernel, NotLieAlgebraic };

  std::vector<std::pair<MonomialWord, QQ>> word_coefficients;
  DiffOp kernel_remainder;
  DiffOp residue;
  /// Largest word degree that some bidegree block of T genuinely needs.
  int min_poly_degree = 0;

  Status status() const {
    if (!residue.is_zero()) return Status::NotLieAlgebraic;
    if (!kernel_remainder.is_zero()) return Status::NeedsKernel;
    return Status::Expressible;
  }
};

std::string to_string(Decomposition::Status s);

/// Word lists used by express: full pattern bases for P/R/T modules and the
/// stabilized-image list for staircases. Exposed for tests.
std::vector<MonomialWord> express_words(const GeneratorFamily& fam,
                                        const ModuleSpec& spec);

/// Batch decomposer: caches realized words and per-bidegree action columns
/// for one (family, module) pair.
class ExpressContext {
 public:
  ExpressContext(const GeneratorFamily& fam, const ModuleSpec& spec);
  Decomposition express(const DiffOp& T) const;

  const GeneratorFamily& family() const { return fam_; }
  const ModuleSpec& module() const { return spec_; }

 private:
  struct Block {
    std::vector<std::pair<size_t, size_t>> pairs;  // (dst index, src index)
    std::vector<size_t> word_idx;                  // sorted by degree
    QMat cols;                                     // rows: pairs, cols: words
  };

  GeneratorFamily fam_;
  ModuleSpec spec_;
  std::vector<Exponent2> basis_;
  std::map<Exponent2, size_t, GrlexLess> basis_index_;
  std::vector<MonomialWord> words_;
  std::vector<DiffOp> realized_;
  std::vector<int> word_degree_;
  std::map<std::pair<int, int>, Block> blocks_;
};

Decomposition express(const DiffOp& T, const GeneratorFamily& fam,
                      const ModuleSpec& spec);

/// The 33 independent second-order operators preserving every S(2,p,q) with
/// p >= 4, in a fixed order; general_staircase_T2 forms their combination.
std::vector<DiffOp> general_staircase_T2_templates(long p);
DiffOp general_staircase_T2(long p, const QVec& coeffs);

/// Basis of the space of operators with derivative indices inside the module
/// exponent set, order <= max_order, preserving the module. Throws CapExceeded
/// when module_dim(spec) > 36.
std::vector<DiffOp> enumerate_preservers(const ModuleSpec& spec,
                                         int max_order);
/// Same, restricted to operators all of whose terms have bidegree dy <= 0.
std::vector<DiffOp> enumerate_preservers_nonpositive(const ModuleSpec& spec,
                                                     int max_order);

/// Rectangular analogues: operators with derivative indices inside src's
/// exponent set mapping src into dst's span.
std::vector<DiffOp> enumerate_hom_preservers(const ModuleSpec& src,
                                             const ModuleSpec& dst,
                                             int max_order);
std::vector<DiffOp> enumerate_hom_preservers_nonpositive(
    const ModuleSpec& src, const ModuleSpec& dst, int max_order);

}  // namespace weyl
