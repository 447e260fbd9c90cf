#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "weyl/parse.hpp"
#include "weyl/superops.hpp"

using namespace weyl;
using namespace weyl::testing;

namespace {

std::map<std::string, MatDiffOp> gen_map(const SuperFamily& fam) {
  std::map<std::string, MatDiffOp> m;
  for (const NamedMatOp& g : build_super_generators(fam)) m.emplace(g.name, g.op);
  return m;
}

/// Coordinates of target in the span of `basis` (nullopt when outside).
std::optional<QVec> coords_in(const std::vector<MatDiffOp>& basis,
                              const MatDiffOp& target) {
  std::map<MatOpKey, size_t> key_index;
  std::vector<std::map<MatOpKey, QQ>> cols;
  for (const MatDiffOp& b : basis) cols.push_back(mat_op_vector(b));
  std::map<MatOpKey, QQ> tv = mat_op_vector(target);
  for (const auto& col : cols)
    for (const auto& [k, c] : col) key_index.emplace(k, 0);
  for (const auto& [k, c] : tv) key_index.emplace(k, 0);
  size_t idx = 0;
  for (auto& [k, i] : key_index) i = idx++;
  QMat A(key_index.size(), basis.size());
  QVec b(key_index.size(), QQ(0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (const auto& [k, c] : cols[j]) A.at(key_index[k], j) = c;
  for (const auto& [k, c] : tv) b[key_index[k]] = c;
  return solve(A, b);
}

MatDiffOp rank2_rebuild(const Rank2Decomposition& d, const SuperFamily& fam) {
  MatDiffOp acc;
  for (const auto& [w, c] : d.word_coefficients) acc += c * realize(w, fam);
  acc += d.kernel_remainder;
  acc += d.residue;
  return acc;
}

/// Closed-form sigma- word count for the staircase family (rational arithmetic,
/// always integer-valued).
QQ stair_minus_count(long r, long p, long q) {
  QQ inner = QQ(p) * QQ(p + 1) - QQ(q * r) * QQ(3 * p + 2) / 3 +
             QQ(q * r * r * (3 * q + 1)) / 12;
  return QQ((q + 1) * (q + 2)) / 2 * inner;
}

/// Same shape for sigma+ words: (p + 1/3) replaces (p + 2/3).
QQ stair_plus_count(long r, long p, long q) {
  QQ inner = QQ(p) * QQ(p + 1) - QQ(q * r) * QQ(3 * p + 1) / 3 +
             QQ(q * r * r * (3 * q + 1)) / 12;
  return QQ((q + 1) * (q + 2)) / 2 * inner;
}

long tri_odd_count(long k, long delta, int sign) {
  long s = sign > 0 ? -delta : delta;
  return (k + 1) * (k + 2) * (k + s + 1) * (k + s + 2) / 4;
}

}  // namespace

TEST_CASE("matrix operator blocks, arithmetic, and composition") {
  DiffOp a = parse_diffop("x*Dx");
  DiffOp b = parse_diffop("Dy");
  DiffOp c = parse_diffop("x");
  DiffOp d = parse_diffop("y*Dy + 1");

  MatDiffOp I = MatDiffOp::identity();
  MatDiffOp s3 = MatDiffOp::sigma3();
  CHECK(I.is_diagonal());
  CHECK(s3.is_diagonal());
  CHECK(mat_compose(s3, s3) == I);
  CHECK(MatDiffOp{}.is_zero());
  CHECK(MatDiffOp{}.is_diagonal());

  MatDiffOp up = MatDiffOp::upper(b);
  MatDiffOp lo = MatDiffOp::lower(c);
  CHECK(up.is_off_diagonal());
  CHECK(lo.is_off_diagonal());
  CHECK_FALSE(up.is_diagonal());
  CHECK_FALSE((I + up).is_diagonal());
  CHECK_FALSE((I + up).is_off_diagonal());

  // Block multiplication: upper * lower lands in the first diagonal slot,
  // lower * upper in the second.
  CHECK(mat_compose(up, lo) == MatDiffOp::diag(compose(b, c), DiffOp()));
  CHECK(mat_compose(lo, up) == MatDiffOp::diag(DiffOp(), compose(c, b)));
  CHECK(mat_compose(up, up).is_zero());
  CHECK(mat_compose(lo, lo).is_zero());

  MatDiffOp dg = MatDiffOp::diag(a, d);
  CHECK(mat_compose(dg, up) == MatDiffOp::upper(compose(a, b)));
  CHECK(mat_compose(up, dg) == MatDiffOp::upper(compose(b, d)));
  CHECK(mat_compose(lo, dg) == MatDiffOp::lower(compose(c, a)));
  CHECK(mat_compose(dg, lo) == MatDiffOp::lower(compose(d, c)));

  // Linear structure.
  CHECK(QQ(2) * dg - dg == dg);
  CHECK(dg + (-dg) == MatDiffOp{});
  CHECK(QQ(3) * (up + lo) == QQ(3) * up + QQ(3) * lo);
}

TEST_CASE("supercommutator follows the diagonal/off-diagonal grading") {
  SuperFamily fam = SuperFamily::tri(3, 1);
  std::vector<NamedMatOp> gens = build_super_generators(fam);
  REQUIRE(gens.size() == 15);

  for (const NamedMatOp& g : gens) {
    if (g.parity == Parity::Even)
      CHECK(g.op.is_diagonal());
    else
      CHECK(g.op.is_off_diagonal());
  }

  for (const NamedMatOp& ga : gens)
    for (const NamedMatOp& gb : gens) {
      MatDiffOp s = supercommutator(ga.op, gb.op);
      MatDiffOp ab = mat_compose(ga.op, gb.op);
      MatDiffOp ba = mat_compose(gb.op, ga.op);
      if (ga.parity == Parity::Odd && gb.parity == Parity::Odd) {
        CHECK(s == ab + ba);  // anticommutator
        CHECK(s.is_diagonal());
      } else {
        CHECK(s == ab - ba);  // commutator
        if (ga.parity != gb.parity) CHECK(s.is_off_diagonal());
        if (ga.parity == Parity::Even && gb.parity == Parity::Even)
          CHECK(s.is_diagonal());
      }
    }

  MatDiffOp mixed = MatDiffOp::identity() + MatDiffOp::upper(parse_diffop("Dx"));
  CHECK_THROWS_AS(supercommutator(mixed, MatDiffOp::identity()),
                  std::domain_error);
  CHECK_THROWS_AS(supercommutator(MatDiffOp::sigma3(), mixed),
                  std::domain_error);
}

TEST_CASE("family text forms, components, and generator counts") {
  for (const char* text : {"sR(3,2,1,0)", "sR(2,2,0,0)", "sT(3,1)", "sT(4,2)",
                           "sS(2,3)", "sS(3,4)"}) {
    SuperFamily f = SuperFamily::parse(text);
    CHECK(f.str() == text);
    CHECK(SuperFamily::parse(f.str()) == f);
  }

  CHECK(SuperFamily::rect(3, 2, 1, 0).component1() == ModuleSpec::rect(2, 2));
  CHECK(SuperFamily::rect(3, 2, 1, 0).component2() == ModuleSpec::rect(3, 2));
  CHECK(SuperFamily::rect(2, 3, 0, 1).component1() == ModuleSpec::rect(2, 3));
  CHECK(SuperFamily::rect(2, 3, 0, 1).component2() == ModuleSpec::rect(2, 2));
  CHECK(SuperFamily::tri(3, 1).component1() == ModuleSpec::tri(2));
  CHECK(SuperFamily::tri(3, 1).component2() == ModuleSpec::tri(3));
  CHECK(SuperFamily::stair(2, 3).component1() == ModuleSpec::stair(2, 2, 1));
  CHECK(SuperFamily::stair(2, 3).component2() == ModuleSpec::stair(2, 3, 1));
  CHECK(SuperFamily::stair(3, 4).component1() == ModuleSpec::stair(3, 3, 1));
  CHECK(SuperFamily::stair(3, 4).component2() == ModuleSpec::stair(3, 4, 1));

  // Published list sizes: 8 + 2(delta+1)(gamma+1), 9 + (delta+1)(delta+2),
  // 10 + 2r.
  for (long delta : {0L, 1L})
    for (long gamma : {0L, 1L}) {
      SuperFamily f = SuperFamily::rect(3, 3, delta, gamma);
      size_t expect = 8 + 2 * (delta + 1) * (gamma + 1);
      CHECK(f.generator_count() == expect);
      CHECK(build_super_generators(f).size() == expect);
    }
  for (long delta : {0L, 1L, 2L}) {
    SuperFamily f = SuperFamily::tri(4, delta);
    size_t expect = 9 + (delta + 1) * (delta + 2);
    CHECK(f.generator_count() == expect);
    CHECK(build_super_generators(f).size() == expect);
  }
  for (long r : {1L, 2L, 3L}) {
    SuperFamily f = SuperFamily::stair(r, 2 * r);
    size_t expect = 10 + 2 * r;
    CHECK(f.generator_count() == expect);
    CHECK(build_super_generators(f).size() == expect);
  }
}

TEST_CASE("generators preserve the module pair blockwise") {
  for (const char* text : {"sR(3,2,1,0)", "sR(2,3,0,1)", "sR(2,2,0,0)",
                           "sT(3,1)", "sT(3,0)", "sS(2,3)", "sS(3,4)"}) {
    SuperFamily fam = SuperFamily::parse(text);
    ModuleSpec c1 = fam.component1(), c2 = fam.component2();
    for (const NamedMatOp& g : build_super_generators(fam)) {
      bool ok = true;
      try {
        // Entry t_ij maps component j into component i.
        if (!g.op.t11.is_zero()) action_matrix_hom(g.op.t11, c1, c1);
        if (!g.op.t12.is_zero()) action_matrix_hom(g.op.t12, c2, c1);
        if (!g.op.t21.is_zero()) action_matrix_hom(g.op.t21, c1, c2);
        if (!g.op.t22.is_zero()) action_matrix_hom(g.op.t22, c2, c2);
      } catch (const NotPreserving&) {
        ok = false;
      }
      INFO(text, " generator ", g.name);
      CHECK(ok);
    }
  }
}

TEST_CASE("anticommutators of raising and lowering generators") {
  SUBCASE("staircase family") {
    auto g = gen_map(SuperFamily::stair(2, 3));
    auto ac = [&](const char* x, const char* y) {
      return supercommutator(g.at(x), g.at(y));
    };
    CHECK(ac("Q+(1)", "Q-(1)") == g.at("T3") + g.at("J"));
    CHECK(ac("Q+(0)", "Q-(0)") == g.at("T3") + QQ(2) * g.at("T4") - g.at("J"));
    CHECK(ac("Q+(0)", "Q-(1)") == g.at("T2"));
    CHECK(ac("Q+(1)", "Q-(0)") == g.at("T1"));
    CHECK(ac("Q+(2)", "Q-(0)") == g.at("T5"));
    CHECK(ac("Q+(3)", "Q-(0)") == g.at("T6"));
    CHECK(ac("Q+(2)", "Q-(1)") == g.at("T6"));
    CHECK(ac("Q+(3)", "Q-(1)") == g.at("T7"));
  }
  SUBCASE("rectangle family") {
    auto g = gen_map(SuperFamily::rect(3, 2, 1, 0));
    auto ac = [&](const char* x, const char* y) {
      return supercommutator(g.at(x), g.at(y));
    };
    CHECK(ac("Q+(0,0)", "Q-(0,0)") == g.at("S0") - g.at("J"));
    CHECK(ac("Q+(1,0)", "Q-(0,0)") == g.at("S-"));
    CHECK(ac("Q+(0,0)", "Q-(1,0)") == g.at("S+"));
    CHECK(ac("Q+(1,0)", "Q-(1,0)") == g.at("S0") + g.at("J"));
  }
  SUBCASE("triangle family") {
    auto g = gen_map(SuperFamily::tri(3, 1));
    auto ac = [&](const char* x, const char* y) {
      return supercommutator(g.at(x), g.at(y));
    };
    CHECK(ac("Q+(0,0)", "Q-(0,0)") == g.at("T7") + g.at("T8") - g.at("J"));
    CHECK(ac("Q+(1,0)", "Q-(1,0)") == g.at("T7") + g.at("J"));
  }
}

TEST_CASE("effective generator lists drop central elements") {
  struct Case {
    const char* fam;
    size_t size;
    bool adjoined;
    std::vector<std::string> dropped;
  };
  const std::vector<Case> cases = {
      {"sR(2,2,0,0)", 9, true, {"J", "K"}},
      {"sR(3,2,1,0)", 11, false, {"K"}},
      {"sR(2,3,0,1)", 11, false, {"J"}},
      {"sT(2,0)", 11, true, {"J"}},
      {"sT(3,0)", 11, true, {"J"}},
      {"sT(3,1)", 15, false, {}},
      {"sS(2,3)", 14, false, {}},
  };
  for (const Case& c : cases) {
    std::vector<std::string> dropped;
    bool adjoined = false;
    auto eff = effective_super_generators(SuperFamily::parse(c.fam), &dropped,
                                          &adjoined);
    INFO(c.fam);
    CHECK(eff.size() == c.size);
    CHECK(adjoined == c.adjoined);
    CHECK(dropped == c.dropped);
    if (adjoined) {
      CHECK(eff.back().op == MatDiffOp::sigma3());
      CHECK(eff.back().parity == Parity::Even);
    }
  }
}

TEST_CASE("bracket closure stabilizes onto finite superalgebras") {
  struct Case {
    const char* fam;
    long dim, even, odd;
    bool identity;
    std::vector<long> derived;
    const char* label;
  };
  const std::vector<Case> cases = {
      {"sR(2,2,0,0)", 9, 7, 2, true, {8, 6, 6}, "sl2 + sl2 + sl2"},
      {"sR(3,2,1,0)", 11, 7, 4, false, {11}, "spl(2,1) + sl2"},
      {"sR(2,3,0,1)", 11, 7, 4, false, {11}, "spl(2,1) + sl2"},
      {"sT(2,0)", 11, 9, 2, true, {10, 8, 8}, "sl3 + sl2"},
      {"sT(3,0)", 11, 9, 2, true, {10, 8, 8}, "sl3 + sl2"},
      {"sT(3,1)", 15, 9, 6, false, {15}, "spl(3,1)"},
      {"sS(2,3)", 14, 8, 6, false, {13, 13}, "pl(2,1) |x C^(3|2)"},
      {"sS(3,4)", 16, 9, 7, false, {15, 15}, "pl(2,1) |x C^(4|3)"},
  };
  for (const Case& c : cases) {
    ClosureResult res = closure_analysis(SuperFamily::parse(c.fam));
    INFO(c.fam);
    CHECK(res.stabilized);
    CHECK(res.dim == c.dim);
    CHECK(res.even_dim == c.even);
    CHECK(res.odd_dim == c.odd);
    CHECK(res.even_dim + res.odd_dim == res.dim);
    CHECK(res.identity_appeared == c.identity);
    CHECK(res.derived_dims == c.derived);
    CHECK(identify_structure(res) == c.label);
    CHECK(res.growth.back() == c.dim);
  }
}

TEST_CASE("closure keeps growing for families outside the classification") {
  struct Case {
    const char* fam;
    std::vector<long> growth;
  };
  const std::vector<Case> cases = {
      {"sT(4,2)", {21, 56, 104, 195, 315, 504, 744}},
      {"sR(3,3,1,1)", {15, 30, 62, 111, 191, 312, 472}},
      {"sR(4,2,2,0)", {13, 21, 31, 43, 57, 73, 91}},
  };
  for (const Case& c : cases) {
    ClosureResult res = closure_analysis(SuperFamily::parse(c.fam), 6);
    INFO(c.fam);
    CHECK_FALSE(res.stabilized);
    CHECK(res.growth == c.growth);
    for (size_t i = 1; i < res.growth.size(); ++i)
      CHECK(res.growth[i] > res.growth[i - 1]);
    CHECK(identify_structure(res).empty());
  }
}

TEST_CASE("even generators act irreducibly on the lowering span") {
  SuperFamily fam = SuperFamily::tri(3, 1);
  std::vector<MatDiffOp> evens, qminus;
  size_t odd_total = 0;
  for (const NamedMatOp& g : build_super_generators(fam)) {
    if (g.parity == Parity::Even) {
      evens.push_back(g.op);
    } else {
      ++odd_total;
      if (g.name.rfind("Q-", 0) == 0) qminus.push_back(g.op);
    }
  }
  CHECK(evens.size() == 9);
  CHECK(odd_total == 6);
  REQUIRE(qminus.size() == 3);
  CHECK(mat_span_dim(qminus) == 3);

  // Bracketing with every even generator stays inside the lowering span; the
  // 3x3 matrices of these actions admit no common proper nonempty invariant
  // coordinate subspace.
  std::vector<QMat> ad;
  for (const MatDiffOp& e : evens) {
    QMat M(3, 3);
    for (int j = 0; j < 3; ++j) {
      std::optional<QVec> co = coords_in(qminus, supercommutator(e, qminus[j]));
      REQUIRE(co.has_value());
      for (int i = 0; i < 3; ++i) M.at(i, j) = (*co)[i];
    }
    ad.push_back(M);
  }
  for (int mask = 1; mask < 7; ++mask) {
    bool invariant = true;
    for (const QMat& M : ad)
      for (int j = 0; j < 3; ++j)
        if ((mask >> j) & 1)
          for (int i = 0; i < 3; ++i)
            if (!((mask >> i) & 1) && M.at(i, j) != 0) invariant = false;
    CHECK_FALSE(invariant);
  }
}

TEST_CASE("triangle word counts match the closed forms") {
  // Per-sign counts (k+1)(k+2)(k -/+ delta + 1)(k -/+ delta + 2)/4.
  CHECK(tri_odd_count(0, 1, +1) == 0);
  CHECK(tri_odd_count(0, 1, -1) == 3);
  CHECK(tri_odd_count(1, 1, +1) == 3);
  CHECK(tri_odd_count(1, 1, -1) == 18);
  CHECK(tri_odd_count(2, 1, +1) == 18);
  CHECK(tri_odd_count(2, 1, -1) == 60);

  for (long delta : {0L, 1L, 2L})
    for (int k : {0, 1, 2}) {
      if (k - delta + 2 < 0) continue;
      SuperFamily fam = SuperFamily::tri(4, delta);
      Rank2Words rw = rank2_basis(fam, k);
      INFO("delta ", delta, " k ", k);
      CHECK((long)rw.plus.size() == tri_odd_count(k, delta, +1));
      CHECK((long)rw.minus.size() == tri_odd_count(k, delta, -1));
      // Grand total (k+1)(k+2)(2k^2+6k+4+delta^2)/2.
      long total = (k + 1) * (k + 2) * (2 * k * k + 6 * k + 4 + delta * delta) / 2;
      CHECK((long)rw.all().size() == total);
      CHECK(rw.even.size() + rw.plus.size() + rw.minus.size() == rw.all().size());
    }

  // Same split for other degree gaps and degrees.
  CHECK(rank2_basis(SuperFamily::tri(5, 1), 1).plus.size() == 3);
  CHECK(rank2_basis(SuperFamily::tri(5, 1), 1).minus.size() == 18);
  CHECK(rank2_basis(SuperFamily::tri(5, 2), 1).plus.size() == 0);
  CHECK(rank2_basis(SuperFamily::tri(5, 2), 1).minus.size() == 30);

  // The four blocks at degree one, gap one: 9 + 9 + 3 + 18 = 39.
  Rank2Words rw31 = rank2_basis(SuperFamily::tri(3, 1), 1);
  CHECK(rw31.even.size() == 18);
  CHECK(rw31.plus.size() == 3);
  CHECK(rw31.minus.size() == 18);
  CHECK(rw31.all().size() == 39);

  // Realized words stay linearly independent.
  for (int k : {1, 2}) {
    SuperFamily fam = SuperFamily::tri(4, 1);
    Rank2Words rw = rank2_basis(fam, k);
    std::vector<MatDiffOp> ops;
    for (const MatWord& w : rw.all()) ops.push_back(realize(w, fam));
    CHECK(mat_span_dim(ops) == (long)ops.size());
    long total = k == 1 ? 39 : 150;
    CHECK((long)ops.size() == total);
  }
}

TEST_CASE("degree-zero words and low-degree realizations") {
  Rank2Words rw = rank2_basis(SuperFamily::rect(3, 3, 0, 0), 0);
  REQUIRE(rw.even.size() == 2);
  REQUIRE(rw.plus.size() == 1);
  REQUIRE(rw.minus.size() == 1);
  std::set<std::string> heads = {rw.even[0].head, rw.even[1].head};
  CHECK(heads == std::set<std::string>{"1", "sigma3"});
  CHECK(rw.even[0].factors.empty());
  CHECK(rw.even[1].factors.empty());
  CHECK(rw.plus[0].head == "Q+(0,0)");
  CHECK(rw.plus[0].factors.empty());
  CHECK(rw.minus[0].head == "Q-(0,0)");

  Rank2Words tw = rank2_basis(SuperFamily::tri(3, 0), 0);
  REQUIRE(tw.even.size() == 2);
  CHECK(tw.plus.size() == 1);
  CHECK(tw.minus.size() == 1);
  SuperFamily tf = SuperFamily::tri(3, 0);
  MatDiffOp p1 = realize(tw.even[0], tf), p2 = realize(tw.even[1], tf);
  CHECK(p1.is_diagonal());
  CHECK(p2.is_diagonal());
  CHECK(p1 + p2 == MatDiffOp::identity());
  CHECK(mat_compose(p1, p1) == p1);
  CHECK(mat_compose(p2, p2) == p2);
  CHECK(mat_compose(p1, p2).is_zero());

  // Degree-zero lowering words of the gap-one triangle family span the same
  // space as the lowering generators.
  SuperFamily t31 = SuperFamily::tri(3, 1);
  Rank2Words tw31 = rank2_basis(t31, 0);
  CHECK(tw31.plus.empty());
  REQUIRE(tw31.minus.size() == 3);
  std::vector<MatDiffOp> both;
  for (const MatWord& w : tw31.minus) both.push_back(realize(w, t31));
  for (const NamedMatOp& g : build_super_generators(t31))
    if (g.name.rfind("Q-", 0) == 0) both.push_back(g.op);
  CHECK(both.size() == 6);
  CHECK(mat_span_dim(both) == 3);
}

TEST_CASE("rectangle word counts match the preserver enumerations") {
  SuperFamily fam = SuperFamily::rect(3, 3, 1, 0);
  ModuleSpec c1 = fam.component1(), c2 = fam.component2();
  for (int k : {1, 2}) {
    Rank2Words rw = rank2_basis(fam, k);
    size_t plus_dim = enumerate_hom_preservers(c2, c1, k).size();
    size_t minus_dim = enumerate_hom_preservers(c1, c2, k).size();
    INFO("k ", k);
    CHECK(rw.plus.size() == plus_dim);
    CHECK(rw.minus.size() == minus_dim);
    if (k == 1) {
      CHECK(plus_dim == 2);
      CHECK(minus_dim == 12);
      CHECK(rw.even.size() == 14);
      CHECK(rw.all().size() == 28);
    } else {
      CHECK(plus_dim == 12);
      CHECK(minus_dim == 40);
      CHECK(rw.even.size() == 52);
      CHECK(rw.all().size() == 104);
    }
    std::vector<MatDiffOp> evens, all;
    for (const MatWord& w : rw.even) evens.push_back(realize(w, fam));
    for (const MatWord& w : rw.all()) all.push_back(realize(w, fam));
    CHECK(mat_span_dim(evens) == (long)evens.size());
    CHECK(mat_span_dim(all) == (long)all.size());
  }
}

TEST_CASE("staircase lowering words: counts, independence, enumerations") {
  CHECK(stair_minus_count(2, 3, 1) == QQ(18));
  CHECK(stair_minus_count(2, 4, 1) == QQ(36));
  CHECK(stair_minus_count(2, 4, 2) == QQ(36));
  CHECK(stair_plus_count(2, 3, 1) == QQ(20));
  CHECK(stair_plus_count(2, 4, 1) == QQ(38));

  // Full-height word lists are exact bases of the lowering preserver spaces.
  std::vector<MatWord> w3 = stair_sigma_minus_words(2, 3);
  CHECK(w3.size() == 18);
  std::vector<MatDiffOp> ops3;
  for (const MatWord& w : w3) ops3.push_back(realize(w, SuperFamily::stair(2, 3)));
  CHECK(mat_span_dim(ops3) == 18);

  std::vector<MatWord> w4 = stair_sigma_minus_words(2, 4);
  CHECK(w4.size() == 36);
  std::vector<MatDiffOp> ops4;
  for (const MatWord& w : w4) ops4.push_back(realize(w, SuperFamily::stair(2, 4)));
  CHECK(mat_span_dim(ops4) == 36);

  // Truncated height keeps the count aligned with the closed form.
  CHECK(stair_sigma_minus_words(2, 4, 1).size() == 36);

  // Enumerated nonpositive-direction preserver spaces between the components
  // reproduce the same dimensions, in both directions.
  auto dim_minus = [](long p) {
    return enumerate_hom_preservers_nonpositive(ModuleSpec::stair(2, p - 1, 1),
                                                ModuleSpec::stair(2, p, 1),
                                                (int)p)
        .size();
  };
  auto dim_plus = [](long p) {
    return enumerate_hom_preservers_nonpositive(ModuleSpec::stair(2, p, 1),
                                                ModuleSpec::stair(2, p - 1, 1),
                                                (int)p)
        .size();
  };
  CHECK(dim_minus(3) == 18);
  CHECK(dim_minus(4) == 36);
  CHECK(dim_plus(3) == 20);
  CHECK(dim_plus(4) == 38);

  // The capped raising word list over-covers its space but still spans it.
  SuperFamily fam = SuperFamily::stair(2, 3);
  Rank2Words rw = rank2_basis(fam, 2);
  CHECK(rw.plus.size() == 84);
  std::vector<MatDiffOp> plus_ops, even_ops;
  for (const MatWord& w : rw.plus) plus_ops.push_back(realize(w, fam));
  for (const MatWord& w : rw.even) even_ops.push_back(realize(w, fam));
  CHECK(mat_span_dim(plus_ops) == 49);
  CHECK(mat_span_dim(even_ops) == (long)even_ops.size());
}

TEST_CASE("blockwise decomposition over family words") {
  SUBCASE("bare lowering matrix unit") {
    SuperFamily fam = SuperFamily::stair(2, 3);
    Rank2Decomposition d =
        rank2_express(MatDiffOp::lower(parse_diffop("1")), fam);
    CHECK(d.status() == Decomposition::Status::Expressible);
    REQUIRE(d.word_coefficients.size() == 1);
    CHECK(d.word_coefficients[0].first.head == "Q-(0)");
    CHECK(d.word_coefficients[0].first.factors.empty());
    CHECK(d.word_coefficients[0].second == QQ(1));
    CHECK(d.min_poly_degree == 0);
    CHECK(rank2_rebuild(d, fam) == MatDiffOp::lower(parse_diffop("1")));
  }
  SUBCASE("diagonal derivative splits over both projections") {
    SuperFamily fam = SuperFamily::tri(3, 0);
    DiffOp dx = parse_diffop("Dx");
    Rank2Decomposition d = rank2_express(MatDiffOp::diag(dx, dx), fam);
    CHECK(d.status() == Decomposition::Status::Expressible);
    REQUIRE(d.word_coefficients.size() == 2);
    std::set<std::string> heads;
    for (const auto& [w, c] : d.word_coefficients) {
      heads.insert(w.head);
      REQUIRE(w.factors.size() == 1);
      CHECK(w.factors[0] == std::pair<std::string, int>{"T4", 1});
      CHECK(c == QQ(1));
    }
    CHECK(heads == std::set<std::string>{"P1", "P2"});
    CHECK(d.min_poly_degree == 1);
    CHECK(rank2_rebuild(d, fam) == MatDiffOp::diag(dx, dx));
  }
  SUBCASE("raising generator expresses as itself") {
    SuperFamily fam = SuperFamily::tri(3, 1);
    MatDiffOp q = gen_map(fam).at("Q+(1,0)");
    Rank2Decomposition d = rank2_express(q, fam);
    CHECK(d.status() == Decomposition::Status::Expressible);
    REQUIRE(d.word_coefficients.size() == 1);
    CHECK(d.word_coefficients[0].first.head == "Q+(1,0)");
    CHECK(d.word_coefficients[0].first.factors.empty());
    CHECK(d.word_coefficients[0].second == QQ(1));
    CHECK(d.min_poly_degree == 1);
  }
  SUBCASE("raising block must map the larger component into the smaller") {
    SuperFamily fam = SuperFamily::tri(3, 1);
    CHECK_THROWS_AS(rank2_express(MatDiffOp::upper(parse_diffop("1")), fam),
                    NotPreserving);
  }
  SUBCASE("mixed generator combination reconstructs exactly") {
    SuperFamily fam = SuperFamily::tri(3, 1);
    auto g = gen_map(fam);
    MatDiffOp T = QQ(2) * g.at("T1") - QQ(3) * g.at("Q+(1,0)") +
                  QQ(1) / 2 * g.at("Q-(0,1)") + QQ(5) * MatDiffOp::identity();
    Rank2Decomposition d = rank2_express(T, fam);
    CHECK(d.status() == Decomposition::Status::Expressible);
    CHECK(d.residue.is_zero());
    CHECK(d.kernel_remainder.is_zero());
    CHECK(rank2_rebuild(d, fam) == T);
  }
  SUBCASE("blocks no word bidegree can reach become the residue") {
    SuperFamily fam = SuperFamily::stair(2, 3);
    DiffOp bad = parse_diffop("y*Dx^2");
    MatDiffOp T = MatDiffOp::diag(bad, bad);
    Rank2Decomposition d = rank2_express(T, fam);
    CHECK(d.status() == Decomposition::Status::NotLieAlgebraic);
    CHECK(d.kernel_remainder.is_zero());
    CHECK(d.residue.t11 == bad);
    CHECK(d.residue.t22 == bad);
    CHECK(d.residue.t12.is_zero());
    CHECK(d.residue.t21.is_zero());
    CHECK(strictly_positive_y(d.residue.t11));
    CHECK(strictly_positive_y(d.residue.t22));
    CHECK(rank2_rebuild(d, fam) == T);
  }
}

TEST_CASE("structure constants are stable across each parameter grid") {
  auto expect_stable = [](const std::vector<SuperFamily>& grid,
                          size_t name_count) {
    InvarianceReport rep = structure_constant_invariance(grid);
    CHECK(rep.names.size() == name_count);
    CHECK(rep.generator_coeffs_match);
    CHECK(rep.identity_coeffs_match);
    CHECK_FALSE(rep.exempt_identity_varies);
  };

  std::vector<SuperFamily> rect10;
  for (long n : {2L, 3L, 4L})
    for (long m : {2L, 3L, 4L}) rect10.push_back(SuperFamily::rect(n, m, 1, 0));
  expect_stable(rect10, 11);

  std::vector<SuperFamily> rect00;
  for (long n : {2L, 3L, 4L})
    for (long m : {2L, 3L, 4L}) rect00.push_back(SuperFamily::rect(n, m, 0, 0));
  expect_stable(rect00, 9);

  expect_stable({SuperFamily::tri(2, 1), SuperFamily::tri(3, 1),
                 SuperFamily::tri(4, 1)},
                15);
  expect_stable({SuperFamily::tri(2, 0), SuperFamily::tri(3, 0),
                 SuperFamily::tri(4, 0)},
                11);
  expect_stable({SuperFamily::stair(2, 3), SuperFamily::stair(2, 4)}, 14);
}
