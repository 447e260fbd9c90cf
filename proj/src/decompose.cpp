#include "weyl/decompose.hpp"

#include <algorithm>
#include <array>

namespace weyl {

ActionMatrix action_matrix(const DiffOp& T, const ModuleSpec& spec) {
  ActionMatrix am;
  am.basis = module_basis(spec);
  am.mat = action_matrix_hom(T, spec, spec);
  return am;
}

QMat action_matrix_hom(const DiffOp& T, const ModuleSpec& src,
                       const ModuleSpec& dst) {
  std::vector<Exponent2> sbasis = module_basis(src);
  std::vector<Exponent2> dbasis = module_basis(dst);
  std::map<Exponent2, size_t, GrlexLess> dindex;
  for (size_t i = 0; i < dbasis.size(); ++i) dindex[dbasis[i]] = i;

  QMat M(dbasis.size(), sbasis.size());
  for (size_t col = 0; col < sbasis.size(); ++col) {
    Poly2 image = apply(T, Poly2::monomial(sbasis[col].i, sbasis[col].j));
    for (const auto& [mono, c] : image.terms()) {
      auto it = dindex.find(mono);
      if (it == dindex.end()) throw NotPreserving(src, sbasis[col]);
      M.at(it->second, col) = c;
    }
  }
  return M;
}

std::string to_string(Decomposition::Status s) {
  switch (s) {
    case Decomposition::Status::Expressible:
      return "expressible";
    case Decomposition::Status::NeedsKernel:
      return "needs_kernel";
    case Decomposition::Status::NotLieAlgebraic:
      return "not_lie_algebraic";
  }
  return "?";
}

std::vector<MonomialWord> express_words(const GeneratorFamily& fam,
                                        const ModuleSpec& spec) {
  auto one_var_patterns = [](const std::string& up, const std::string& down,
                             const std::string& zero, long cap) {
    // (up)^i (zero)^t and (down)^i (zero)^t with i + t <= cap; i = 0 listed
    // once. Realizes to a spanning set of the one-variable action algebra.
    std::vector<MonomialWord> out;
    for (long i = 0; i <= cap; ++i)
      for (long t = 0; i + t <= cap; ++t) {
        MonomialWord w;
        if (i > 0) w.factors.push_back({up, static_cast<int>(i)});
        if (t > 0) w.factors.push_back({zero, static_cast<int>(t)});
        out.push_back(w);
        if (i > 0) {
          w.factors.clear();
          w.factors.push_back({down, static_cast<int>(i)});
          if (t > 0) w.factors.push_back({zero, static_cast<int>(t)});
          out.push_back(w);
        }
      }
    return out;
  };

  switch (fam.kind) {
    case FamilyKind::Sl2_1D:
      return one_var_patterns("J+", "J-", "J0", fam.n);
    case FamilyKind::G11: {
      std::vector<MonomialWord> left =
          one_var_patterns("J+", "J-", "J0", fam.n);
      std::vector<MonomialWord> right =
          one_var_patterns("K+", "K-", "K0", fam.m);
      std::vector<MonomialWord> out;
      for (const MonomialWord& a : left)
        for (const MonomialWord& b : right) {
          MonomialWord w = a;
          for (const auto& f : b.factors) w.factors.push_back(f);
          out.push_back(w);
        }
      return out;
    }
    case FamilyKind::G15:
      return basis_sl3(fam.n, static_cast<int>(fam.n));
    case FamilyKind::G24:
      return basis_g24_effective(fam.r, fam.p, spec.q);
  }
  return {};
}

ExpressContext::ExpressContext(const GeneratorFamily& fam,
                               const ModuleSpec& spec)
    : fam_(fam), spec_(spec) {
  if (!fam.matches(spec))
    throw std::invalid_argument("family " + fam.str() +
                                " does not act on module " + spec.str());
  basis_ = module_basis(spec);
  for (size_t i = 0; i < basis_.size(); ++i) basis_index_[basis_[i]] = i;

  std::map<std::string, DiffOp> gens;
  for (const NamedOp& g : build_generators(fam)) gens[g.name] = g.op;

  words_ = express_words(fam, spec);
  std::map<std::pair<int, int>, std::vector<size_t>> by_bidegree;
  for (size_t w = 0; w < words_.size(); ++w) {
    realized_.push_back(realize(words_[w], gens));
    word_degree_.push_back(words_[w].degree());
    BiDegree d = word_bidegree(words_[w], fam_);
    by_bidegree[{d.dx, d.dy}].push_back(w);
  }

  for (auto& [bd, idx] : by_bidegree) {
    Block block;
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      return word_degree_[a] < word_degree_[b];
    });
    block.word_idx = idx;
    for (size_t s = 0; s < basis_.size(); ++s) {
      Exponent2 target{basis_[s].i + bd.first, basis_[s].j + bd.second};
      auto it = basis_index_.find(target);
      if (it != basis_index_.end()) block.pairs.push_back({it->second, s});
    }
    block.cols = QMat(block.pairs.size(), idx.size());
    for (size_t c = 0; c < idx.size(); ++c) {
      const DiffOp& op = realized_[idx[c]];
      for (size_t r = 0; r < block.pairs.size(); ++r) {
        auto [dst, src] = block.pairs[r];
        Poly2 image = apply(op, Poly2::monomial(basis_[src].i, basis_[src].j));
        block.cols.at(r, c) = image.coeff(basis_[dst].i, basis_[dst].j);
      }
    }
    blocks_[bd] = std::move(block);
  }
}

Decomposition ExpressContext::express(const DiffOp& T) const {
  if (auto w = preservation_witness(T, spec_)) throw NotPreserving(spec_, *w);

  Decomposition out;
  DiffOp expressed_sum;
  std::map<size_t, QQ> coeff_by_word;

  for (const auto& [bd, part] : bidegree_decompose(T)) {
    auto [cmp, ker] = kernel_split(part, spec_);
    if (!min_length(fam_, bd).reachable) {
      // No generator word can land on this bidegree: the non-annihilating
      // terms are stuck, the annihilating ones fall into the remainder.
      out.residue += cmp;
      continue;
    }
    // Action of the bidegree-(dx,dy) part on a basis monomial mu: a multiple
    // of the shifted monomial mu + (dx,dy).
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t s = 0; s < basis_.size(); ++s) {
      Exponent2 target{basis_[s].i + bd.dx, basis_[s].j + bd.dy};
      auto it = basis_index_.find(target);
      if (it != basis_index_.end()) pairs.push_back({it->second, s});
    }
    QVec b(pairs.size(), QQ(0));
    bool nonzero = false;
    for (size_t r = 0; r < pairs.size(); ++r) {
      auto [dst, src] = pairs[r];
      Poly2 image = apply(part, Poly2::monomial(basis_[src].i, basis_[src].j));
      b[r] = image.coeff(basis_[dst].i, basis_[dst].j);
      nonzero = nonzero || b[r] != 0;
    }
    if (!nonzero) continue;  // the whole part annihilates the module
    auto bit = blocks_.find({bd.dx, bd.dy});
    if (bit == blocks_.end())
      throw std::logic_error("express: acting part with no words at bidegree");

    const Block& block = bit->second;
    if (block.pairs != pairs)
      throw std::logic_error("express: block row order mismatch");
    std::vector<int> caps;
    for (size_t idx : block.word_idx)
      if (caps.empty() || caps.back() != word_degree_[idx])
        caps.push_back(word_degree_[idx]);

    bool solved = false;
    for (int cap : caps) {
      size_t ncols = 0;
      while (ncols < block.word_idx.size() &&
             word_degree_[block.word_idx[ncols]] <= cap)
        ++ncols;
      QMat A(block.pairs.size(), ncols);
      for (size_t r = 0; r < block.pairs.size(); ++r)
        for (size_t c = 0; c < ncols; ++c) A.at(r, c) = block.cols.at(r, c);
      if (auto x = solve(A, b)) {
        for (size_t c = 0; c < ncols; ++c)
          if ((*x)[c] != 0) coeff_by_word[block.word_idx[c]] += (*x)[c];
        out.min_poly_degree = std::max(out.min_poly_degree, cap);
        solved = true;
        break;
      }
    }
    if (!solved)
      throw std::logic_error("express: action block not in word span");
  }

  for (const auto& [w, c] : coeff_by_word) expressed_sum += c * realized_[w];
  out.kernel_remainder = T - out.residue - expressed_sum;
  if (!kernel_split(out.kernel_remainder, spec_).first.is_zero())
    throw std::logic_error("express: remainder does not annihilate module");

  std::vector<size_t> order;
  for (const auto& [w, c] : coeff_by_word) order.push_back(w);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (word_degree_[a] != word_degree_[b])
      return word_degree_[a] < word_degree_[b];
    return a < b;
  });
  for (size_t w : order)
    out.word_coefficients.push_back({words_[w], coeff_by_word.at(w)});
  return out;
}

Decomposition express(const DiffOp& T, const GeneratorFamily& fam,
                      const ModuleSpec& spec) {
  return ExpressContext(fam, spec).express(T);
}

namespace {

DiffOp mono_op(int a, int b, int i, int j, const QQ& c = QQ(1)) {
  return DiffOp::term(Poly2::monomial(a, b, c), i, j);
}

}  // namespace

std::vector<DiffOp> general_staircase_T2_templates(long p) {
  // Weighted Euler operator x Dx + 2 y Dy, matching the staircase slope 2.
  DiffOp E = mono_op(1, 0, 1, 0) + mono_op(0, 1, 0, 1, QQ(2));
  DiffOp L0 = E - QQ(p) * DiffOp::identity();
  DiffOp L1 = E - QQ(p - 1) * DiffOp::identity();
  std::vector<DiffOp> t;
  t.push_back(mono_op(0, 0, 0, 2));                  // 1: Dy^2
  t.push_back(mono_op(0, 0, 1, 1));                  // 2: DxDy
  t.push_back(mono_op(1, 0, 0, 2));                  // 3: x Dy^2
  t.push_back(mono_op(0, 0, 2, 0));                  // 4: Dx^2
  t.push_back(mono_op(1, 0, 1, 1));                  // 5: x DxDy
  t.push_back(mono_op(2, 0, 0, 2));                  // 6: x^2 Dy^2
  t.push_back(mono_op(0, 1, 0, 2));                  // 7: y Dy^2
  t.push_back(mono_op(0, 0, 0, 1));                  // 8: Dy
  t.push_back(mono_op(1, 0, 2, 0));                  // 9: x Dx^2
  t.push_back(mono_op(2, 0, 1, 1));                  // 10: x^2 DxDy
  t.push_back(mono_op(0, 1, 1, 1));                  // 11: y DxDy
  t.push_back(mono_op(3, 0, 0, 2));                  // 12: x^3 Dy^2
  t.push_back(mono_op(1, 1, 0, 2));                  // 13: x y Dy^2
  t.push_back(mono_op(0, 0, 1, 0));                  // 14: Dx
  t.push_back(mono_op(1, 0, 0, 1));                  // 15: x Dy
  t.push_back(mono_op(2, 0, 2, 0));                  // 16: x^2 Dx^2
  t.push_back(mono_op(0, 1, 2, 0));                  // 17: y Dx^2
  t.push_back(mono_op(3, 0, 1, 1));                  // 18: x^3 DxDy
  t.push_back(mono_op(1, 1, 1, 1));                  // 19: x y DxDy
  t.push_back(mono_op(4, 0, 0, 2));                  // 20: x^4 Dy^2
  t.push_back(mono_op(2, 1, 0, 2));                  // 21: x^2 y Dy^2
  t.push_back(mono_op(0, 2, 0, 2));                  // 22: y^2 Dy^2
  t.push_back(mono_op(1, 0, 1, 0));                  // 23: x Dx
  t.push_back(mono_op(2, 0, 0, 1));                  // 24: x^2 Dy
  t.push_back(mono_op(0, 1, 0, 1));                  // 25: y Dy
  t.push_back(DiffOp::identity());                   // 26: 1
  t.push_back(compose(mono_op(2, 0, 1, 0), L0));     // 27
  t.push_back(compose(mono_op(0, 1, 1, 0), L0));     // 28
  t.push_back(compose(mono_op(3, 0, 0, 1), L0));     // 29
  t.push_back(compose(mono_op(1, 1, 0, 1), L0));     // 30
  t.push_back(compose(mono_op(1, 0, 0, 0), L0));     // 31
  t.push_back(compose(mono_op(2, 0, 0, 0), compose(L1, L0)));  // 32
  t.push_back(compose(mono_op(0, 1, 0, 0), compose(L1, L0)));  // 33
  return t;
}

DiffOp general_staircase_T2(long p, const QVec& coeffs) {
  std::vector<DiffOp> t = general_staircase_T2_templates(p);
  if (coeffs.size() != t.size())
    throw std::invalid_argument("general_staircase_T2: expected 33 coefficients");
  DiffOp out;
  for (size_t i = 0; i < t.size(); ++i)
    if (coeffs[i] != 0) out += coeffs[i] * t[i];
  return out;
}

namespace {

std::vector<DiffOp> hom_preservers_impl(const ModuleSpec& src,
                                        const ModuleSpec& dst, int max_order,
                                        bool nonpositive_only) {
  long ds = module_dim(src), dd = module_dim(dst);
  if (ds > 36 || dd > 36)
    throw CapExceeded("enumerate: module dimension exceeds 36");

  // Lift every elementary action matrix, then cut the directions whose lift
  // violates the order bound (or has a positive-bidegree term). The surviving
  // combinations are exactly the admissible operators.
  std::vector<DiffOp> lifts;
  std::vector<Exponent2> sb = module_basis(src), db = module_basis(dst);
  for (size_t rr = 0; rr < db.size(); ++rr)
    for (size_t cc = 0; cc < sb.size(); ++cc) {
      QMat E(db.size(), sb.size());
      E.at(rr, cc) = 1;
      lifts.push_back(lift_hom(E, src, dst));
    }

  std::map<std::array<int, 4>, size_t> row_index;
  auto violates = [&](Exponent2 deriv, Exponent2 mono) {
    if (deriv.i + deriv.j > max_order) return true;
    return nonpositive_only && mono.j - deriv.j > 0;
  };
  for (const DiffOp& L : lifts)
    for (const auto& [deriv, coeff] : L.terms())
      for (const auto& [mono, c] : coeff.terms())
        if (violates(deriv, mono))
          row_index.try_emplace({deriv.i, deriv.j, mono.i, mono.j},
                                row_index.size());

  QMat A(row_index.size(), lifts.size());
  for (size_t col = 0; col < lifts.size(); ++col)
    for (const auto& [deriv, coeff] : lifts[col].terms())
      for (const auto& [mono, c] : coeff.terms())
        if (violates(deriv, mono))
          A.at(row_index.at({deriv.i, deriv.j, mono.i, mono.j}), col) = c;

  std::vector<DiffOp> out;
  for (const QVec& v : nullspace(A)) {
    DiffOp op;
    for (size_t col = 0; col < lifts.size(); ++col)
      if (v[col] != 0) op += v[col] * lifts[col];
    out.push_back(op);
  }
  return out;
}

}  // namespace

std::vector<DiffOp> enumerate_preservers(const ModuleSpec& spec,
                                         int max_order) {
  return hom_preservers_impl(spec, spec, max_order, false);
}

std::vector<DiffOp> enumerate_preservers_nonpositive(const ModuleSpec& spec,
                                                     int max_order) {
  return hom_preservers_impl(spec, spec, max_order, true);
}

std::vector<DiffOp> enumerate_hom_preservers(const ModuleSpec& src,
                                             const ModuleSpec& dst,
                                             int max_order) {
  return hom_preservers_impl(src, dst, max_order, false);
}

std::vector<DiffOp> enumerate_hom_preservers_nonpositive(
    const ModuleSpec& src, const ModuleSpec& dst, int max_order) {
  return hom_preservers_impl(src, dst, max_order, true);
}

}  // namespace weyl
