#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weyl/modules.hpp"

namespace weyl {

enum class FamilyKind { Sl2_1D, G11, G15, G24 };

/// A named finite list of polynomial differential operators preserving one of
/// the module kinds:
///   sl2(n)   : J+, J-, J0 on P(n)
///   g11(n,m) : J+, J-, J0, K+, K-, K0 on R(n,m)
///   g15(n)   : J1..J8 on T(n)
///   g24(r,p) : J1..J4, J5..J{5+r} on S(r,p,q) for any q
struct GeneratorFamily {
  FamilyKind kind = FamilyKind::Sl2_1D;
  long n = 0, m = 0, r = 0, p = 0;

  static GeneratorFamily sl2(long n);
  static GeneratorFamily g11(long n, long m);
  static GeneratorFamily g15(long n);
  static GeneratorFamily g24(long r, long p);

  /// Text forms: sl2(n), g11(n,m), g15(n), g24(r,p).
  static GeneratorFamily parse(const std::string& text);
  std::string str() const;

  size_t generator_count() const;
  /// The largest module of the matching kind: P(n), R(n,m), T(n),
  /// S(r,p,floor(p/r)).
  ModuleSpec default_module() const;
  /// True when the family's parameters line up with the module (staircase
  /// modules may be truncated: any q with S(r,p,q)).
  bool matches(const ModuleSpec& spec) const;

  friend bool operator==(const GeneratorFamily&,
                         const GeneratorFamily&) = default;
};

struct NamedOp {
  std::string name;
  DiffOp op;
};

std::vector<NamedOp> build_generators(const GeneratorFamily& fam);

/// Bidegree of each generator; throws std::domain_error if any generator were
/// not bidegree-homogeneous (none of the built-in ones are).
std::map<std::string, BiDegree> generator_bidegrees(const GeneratorFamily& fam);

/// Pairwise commutators expressed over the generators and the identity.
struct StructureTable {
  std::vector<std::string> names;
  /// coeffs[i][j] has size names.size()+1: coordinates of [g_i, g_j] over the
  /// generators followed by the identity coefficient.
  std::vector<std::vector<QVec>> coeffs;
  bool closed = true;
  /// First pair whose commutator escaped span(generators, identity).
  std::optional<std::pair<std::string, std::string>> escape;
};

StructureTable verify_closure(const GeneratorFamily& fam);

struct RelationReport {
  std::vector<std::pair<std::string, bool>> checks;
  bool all_pass = true;
};

/// The nine quadratic operator identities satisfied by g15(n).
RelationReport verify_relations_sl3(long n);
/// Negative control: same checks with J1 shifted by +x; must not all pass.
RelationReport verify_relations_sl3_perturbed(long n);

/// J+ J- == (J0)^2 - J0 - n(n+2)/4 as operators, for sl2(n).
bool verify_casimir_sl2(long n);
/// Negative control: perturbs the scalar term; must fail for every n >= 0.
bool verify_casimir_sl2_broken(long n);

}  // namespace weyl
