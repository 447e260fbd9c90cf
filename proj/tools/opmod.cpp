// opmod: build, verify, enumerate, and decompose polynomial differential
// operators preserving rectangular, triangular, and staircase modules.
#include <chrono>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weyl/decompose.hpp"
#include "weyl/parse.hpp"
#include "weyl/superops.hpp"

using json = nlohmann::ordered_json;
using namespace weyl;

namespace {

constexpr const char* kSchemaVersion = "1.0";

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  bool pass = true;
  std::chrono::steady_clock::time_point t0 =
      std::chrono::steady_clock::now();
};

int emit(const Report& r, bool as_json) {
  if (as_json) {
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - r.t0)
                    .count();
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["results"] = r.results;
    j["status"] = r.pass ? "pass" : "fail";
    j["timing_ms"] = ms;
    std::cout << j.dump(2) << "\n";
  }
  return r.pass ? 0 : 1;
}

void say(bool as_json, const std::string& line) {
  if (!as_json) std::cout << line << "\n";
}

// Bare family names get small default parameters.
GeneratorFamily family_arg(const std::string& text) {
  if (text.find('(') != std::string::npos) return GeneratorFamily::parse(text);
  if (text == "sl2") return GeneratorFamily::sl2(3);
  if (text == "g11") return GeneratorFamily::g11(2, 2);
  if (text == "g15") return GeneratorFamily::g15(3);
  if (text == "g24") return GeneratorFamily::g24(2, 4);
  throw std::invalid_argument("unknown family \"" + text + "\"");
}

json words_json(const std::vector<std::pair<MonomialWord, QQ>>& wc) {
  json arr = json::array();
  for (const auto& [w, c] : wc)
    arr.push_back({{"word", w.str()}, {"coeff", rational_str(c)}});
  return arr;
}

json decomposition_json(const std::string& op_text, const std::string& fam,
                        const std::string& mod, const Decomposition& dec) {
  json j;
  j["operator"] = op_text;
  j["family"] = fam;
  j["module"] = mod;
  j["words"] = words_json(dec.word_coefficients);
  j["kernel_remainder"] = to_string(dec.kernel_remainder);
  j["residue"] = to_string(dec.residue);
  j["min_poly_degree"] = dec.min_poly_degree;
  j["status"] = to_string(dec.status());
  return j;
}

json mat_json(const MatDiffOp& op) {
  return {{"t11", to_string(op.t11)},
          {"t12", to_string(op.t12)},
          {"t21", to_string(op.t21)},
          {"t22", to_string(op.t22)}};
}

struct CheckList {
  json items = json::array();
  bool all = true;
  int passed = 0;

  void add(const std::string& name, bool ok, const std::string& detail = "") {
    json it = {{"check", name}, {"pass", ok}};
    if (!detail.empty()) it["detail"] = detail;
    items.push_back(it);
    all = all && ok;
    passed += ok;
  }
};

bool check_casimir(const std::map<std::string, DiffOp>& g, const std::string& up,
                   const std::string& down, const std::string& zero, long c) {
  DiffOp lhs = compose(g.at(up), g.at(down));
  DiffOp rhs = compose(g.at(zero), g.at(zero)) - g.at(zero) -
               qq(c * (c + 2), 4) * DiffOp::identity();
  return lhs == rhs;
}

long image_count_g15(int k) {
  long total = 0;
  for (long t = 0; t <= k; ++t) total += (t + 1) * (t + 1) * (t + 1);
  return total;
}

long image_count_g24(long r, int k) {
  long total = 0;
  for (long t = 0; t <= k; ++t)
    total += (t + 1) * (t + 2) * ((r + 2) * t + 3) / 6;
  return total;
}

long effective_count_g24(long r, long p, long q) {
  // (q+1)(q+2)/2 * [(p+1)(p+1-qr) + q r^2 (3q+1)/12], exact in rationals.
  QQ val = qq((q + 1) * (q + 2), 2) *
           (QQ((p + 1) * (p + 1 - q * r)) +
            qq(q * r * r * (3 * q + 1), 12));
  if (val.get_den() != 1) throw std::logic_error("non-integer word count");
  return static_cast<long>(val.get_num().get_si());
}

int cmd_verify_relations(const std::string& family, bool as_json) {
  Report rep;
  rep.command = "verify relations";
  rep.inputs["family"] = family;
  GeneratorFamily fam = family_arg(family);
  CheckList checks;

  std::map<std::string, DiffOp> g;
  for (const NamedOp& it : build_generators(fam)) g[it.name] = it.op;

  switch (fam.kind) {
    case FamilyKind::Sl2_1D:
      checks.add("casimir", check_casimir(g, "J+", "J-", "J0", fam.n));
      break;
    case FamilyKind::G11:
      checks.add("casimir x", check_casimir(g, "J+", "J-", "J0", fam.n));
      checks.add("casimir y", check_casimir(g, "K+", "K-", "K0", fam.m));
      break;
    case FamilyKind::G15: {
      RelationReport rel = verify_relations_sl3(fam.n);
      for (const auto& [name, ok] : rel.checks) checks.add(name, ok);
      say(as_json, "relations: " + std::to_string(checks.passed) + "/" +
                       std::to_string(checks.items.size()) +
                       (checks.all ? " pass" : " FAIL"));
      break;
    }
    case FamilyKind::G24:
      break;
  }
  StructureTable table = verify_closure(fam);
  checks.add("commutator closure", table.closed,
             table.closed ? "" : "escape at [" + table.escape->first + "," +
                                     table.escape->second + "]");
  if (fam.kind != FamilyKind::G15)
    say(as_json, "relations: " + std::to_string(checks.passed) + "/" +
                     std::to_string(checks.items.size()) +
                     (checks.all ? " pass" : " FAIL"));
  else
    say(as_json,
        std::string("commutator closure: ") + (table.closed ? "pass" : "FAIL"));
  rep.results["checks"] = checks.items;
  rep.pass = checks.all;
  return emit(rep, as_json);
}

int cmd_verify_counts(const std::string& family, int k, bool as_json) {
  Report rep;
  rep.command = "verify counts";
  rep.inputs["family"] = family;
  rep.inputs["k"] = k;
  GeneratorFamily fam = family_arg(family);
  CheckList checks;

  switch (fam.kind) {
    case FamilyKind::Sl2_1D: {
      for (int kk = 0; kk <= k; ++kk) {
        long want = static_cast<long>(kk + 1) * kk * (kk - 1) / 6;
        checks.add("word kernel dim, degree cap " + std::to_string(kk),
                   enveloping_kernel_dim_sl2(fam.n, kk) == want,
                   "expected " + std::to_string(want));
        long wsym = static_cast<long>(kk) * (kk - 1) / 2;
        checks.add("symbol kernel dim, degree " + std::to_string(kk),
                   symbol_kernel_dim_sl2(kk) == wsym,
                   "expected " + std::to_string(wsym));
      }
      break;
    }
    case FamilyKind::G11: {
      std::vector<MonomialWord> words =
          express_words(fam, fam.default_module());
      long want = (fam.n + 1) * (fam.n + 1) * (fam.m + 1) * (fam.m + 1);
      checks.add("pattern word count",
                 static_cast<long>(words.size()) == want,
                 "expected " + std::to_string(want));
      long rank = realized_rank(words, fam);
      checks.add("realized rank", rank == want,
                 "rank " + std::to_string(rank));
      say(as_json, "dim " + std::to_string(rank) + " confirmed");
      break;
    }
    case FamilyKind::G15: {
      int kk = std::min<long>(k, fam.n);
      long want = image_count_g15(kk);
      long rank = realized_rank(basis_sl3(fam.n, kk), fam);
      checks.add("image dimension at degree cap " + std::to_string(kk),
                 rank == want, "expected " + std::to_string(want));
      say(as_json, "dim " + std::to_string(rank) + " confirmed");
      if (k >= 2)
        checks.add("symbol kernel dim, degree 2", symbol_kernel_dim_sl3(2) == 9,
                   "expected 9");
      if (k >= 3)
        checks.add("symbol kernel dim, degree 3",
                   symbol_kernel_dim_sl3(3) == 56, "expected 56");
      break;
    }
    case FamilyKind::G24: {
      long q = fam.p / fam.r;
      for (int kk = 0; kk <= k; ++kk) {
        long want = image_count_g24(fam.r, kk);
        long rank = realized_rank(basis_g24_image(fam.r, fam.p, kk), fam);
        checks.add("image dimension at degree cap " + std::to_string(kk),
                   rank == want, "expected " + std::to_string(want));
      }
      std::vector<MonomialWord> eff = basis_g24_effective(fam.r, fam.p, q);
      long want = effective_count_g24(fam.r, fam.p, q);
      checks.add("effective word count",
                 static_cast<long>(eff.size()) == want,
                 "expected " + std::to_string(want));
      long rank = realized_rank(eff, fam);
      checks.add("effective realized rank", rank == want,
                 "rank " + std::to_string(rank));
      say(as_json, "dim " + std::to_string(rank) + " confirmed");
      break;
    }
  }
  for (const auto& it : checks.items)
    say(as_json, std::string(it["pass"].get<bool>() ? "pass" : "FAIL") + "  " +
                     it["check"].get<std::string>());
  rep.results["checks"] = checks.items;
  rep.pass = checks.all;
  return emit(rep, as_json);
}

int cmd_verify_preservation(const std::string& family,
                            const std::string& module_text,
                            const std::string& super, bool as_json) {
  Report rep;
  rep.command = "verify preservation";
  CheckList checks;
  if (!super.empty()) {
    rep.inputs["super"] = super;
    SuperFamily fam = SuperFamily::parse(super);
    ModuleSpec c1 = fam.component1(), c2 = fam.component2();
    for (const NamedMatOp& g : build_super_generators(fam)) {
      bool ok = true;
      try {
        action_matrix_hom(g.op.t11, c1, c1);
        action_matrix_hom(g.op.t12, c2, c1);
        action_matrix_hom(g.op.t21, c1, c2);
        action_matrix_hom(g.op.t22, c2, c2);
      } catch (const NotPreserving&) {
        ok = false;
      }
      checks.add(g.name + " preserves " + c1.str() + " + " + c2.str(), ok);
    }
  } else {
    rep.inputs["family"] = family;
    GeneratorFamily fam = family_arg(family);
    ModuleSpec spec = module_text.empty() ? fam.default_module()
                                          : ModuleSpec::parse(module_text);
    rep.inputs["module"] = spec.str();
    for (const NamedOp& g : build_generators(fam))
      checks.add(g.name + " preserves " + spec.str(), preserves(g.op, spec));
  }
  for (const auto& it : checks.items)
    say(as_json, std::string(it["pass"].get<bool>() ? "pass" : "FAIL") + "  " +
                     it["check"].get<std::string>());
  say(as_json, checks.all ? "all generators preserve the module"
                          : "preservation FAILED");
  rep.results["checks"] = checks.items;
  rep.pass = checks.all;
  return emit(rep, as_json);
}

json closure_json(const ClosureResult& res) {
  json j;
  j["status"] = res.stabilized ? "stabilized" : "exceeded";
  j["dim_sequence"] = res.growth;
  j["rounds"] = res.rounds;
  j["dropped_central"] = res.dropped_central;
  j["adjoined_sigma3"] = res.adjoined_sigma3;
  if (res.stabilized) {
    j["final_dim"] = res.dim;
    j["even_dim"] = res.even_dim;
    j["odd_dim"] = res.odd_dim;
    j["identity_appeared"] = res.identity_appeared;
    j["signature"] = res.derived_dims;
    std::string label = identify_structure(res);
    if (!label.empty()) j["label"] = label;
  }
  return j;
}

int cmd_verify_closure(const std::string& family, const std::string& super,
                       int cap, bool as_json) {
  Report rep;
  rep.command = "verify closure";
  if (!super.empty()) {
    rep.inputs["super"] = super;
    rep.inputs["cap"] = cap;
    SuperFamily fam = SuperFamily::parse(super);
    ClosureResult res = closure_analysis(fam, cap);
    rep.results = closure_json(res);
    std::string dims;
    for (long d : res.growth) dims += (dims.empty() ? "" : " ") + std::to_string(d);
    say(as_json, "growth: " + dims);
    if (res.stabilized) {
      std::string label = identify_structure(res);
      say(as_json, "status stabilized: dim " + std::to_string(res.dim) +
                       " (even " + std::to_string(res.even_dim) + ", odd " +
                       std::to_string(res.odd_dim) + ")" +
                       (label.empty() ? "" : ", structure " + label));
    } else {
      say(as_json, "status exceeded: still growing after " +
                       std::to_string(res.rounds) +
                       " rounds (evidence of an infinite-dimensional span)");
    }
    rep.pass = true;
  } else {
    rep.inputs["family"] = family;
    GeneratorFamily fam = family_arg(family);
    StructureTable table = verify_closure(fam);
    rep.results["closed"] = table.closed;
    if (!table.closed)
      rep.results["escape"] = {table.escape->first, table.escape->second};
    say(as_json, table.closed
                     ? "commutators close over generators and identity"
                     : "closure FAILED at [" + table.escape->first + "," +
                           table.escape->second + "]");
    rep.pass = table.closed;
  }
  return emit(rep, as_json);
}

int cmd_decompose(const std::string& op_text, const std::string& family,
                  const std::string& module_text, const std::string& super,
                  const std::vector<std::string>& blocks, bool as_json) {
  Report rep;
  rep.command = "decompose";
  if (!super.empty()) {
    SuperFamily fam = SuperFamily::parse(super);
    rep.inputs["super"] = super;
    MatDiffOp T;
    T.t11 = parse_diffop(blocks[0]);
    T.t12 = parse_diffop(blocks[1]);
    T.t21 = parse_diffop(blocks[2]);
    T.t22 = parse_diffop(blocks[3]);
    rep.inputs["operator"] = mat_json(T);
    try {
      Rank2Decomposition dec = rank2_express(T, fam);
      json words = json::array();
      for (const auto& [w, c] : dec.word_coefficients)
        words.push_back({{"word", w.str()}, {"coeff", rational_str(c)}});
      rep.results["words"] = words;
      rep.results["kernel_remainder"] = mat_json(dec.kernel_remainder);
      rep.results["residue"] = mat_json(dec.residue);
      rep.results["min_poly_degree"] = dec.min_poly_degree;
      rep.results["status"] = to_string(dec.status());
      for (const auto& [w, c] : dec.word_coefficients)
        say(as_json, "  " + rational_str(c) + " * " + w.str());
      say(as_json, "status: " + to_string(dec.status()) + ", degree " +
                       std::to_string(dec.min_poly_degree));
    } catch (const NotPreserving& e) {
      say(as_json, std::string("not preserving: ") + e.what());
      rep.results["error"] = e.what();
      rep.pass = false;
    }
    return emit(rep, as_json);
  }

  GeneratorFamily fam = family_arg(family);
  ModuleSpec spec = module_text.empty() ? fam.default_module()
                                        : ModuleSpec::parse(module_text);
  rep.inputs["operator"] = op_text;
  rep.inputs["family"] = fam.str();
  rep.inputs["module"] = spec.str();
  DiffOp T = parse_diffop(op_text);
  try {
    Decomposition dec = express(T, fam, spec);
    rep.results = decomposition_json(op_text, fam.str(), spec.str(), dec);
    for (const auto& [w, c] : dec.word_coefficients)
      say(as_json, "  " + rational_str(c) + " * " + w.str());
    if (!dec.kernel_remainder.is_zero())
      say(as_json, "  kernel remainder: " + to_string(dec.kernel_remainder));
    if (!dec.residue.is_zero())
      say(as_json, "  residue: " + to_string(dec.residue));
    say(as_json, "status: " + to_string(dec.status()) + ", degree " +
                     std::to_string(dec.min_poly_degree));
  } catch (const NotPreserving& e) {
    say(as_json, std::string("not preserving: ") + e.what());
    rep.results["error"] = e.what();
    rep.pass = false;
  }
  return emit(rep, as_json);
}

int cmd_enumerate(const std::string& kind, const std::string& family,
                  const std::string& module_text, int k, int l,
                  bool nonpositive, bool as_json) {
  Report rep;
  rep.command = "enumerate " + kind;
  json listing = json::array();
  long count = 0;

  if (kind == "maximal-length") {
    GeneratorFamily fam = family_arg(family);
    rep.inputs["family"] = fam.str();
    rep.inputs["l"] = l;
    std::vector<MonomialWord> words = maximal_length_monomials(fam, l);
    for (const MonomialWord& w : words) {
      listing.push_back(w.str());
      say(as_json, "  " + w.str());
    }
    count = static_cast<long>(words.size());
  } else if (kind == "basis") {
    GeneratorFamily fam = family_arg(family);
    rep.inputs["family"] = fam.str();
    std::vector<MonomialWord> words;
    if (fam.kind == FamilyKind::G15 && k >= 0) {
      rep.inputs["k"] = k;
      words = basis_sl3(fam.n, k);
    } else if (fam.kind == FamilyKind::G24 && k >= 0) {
      rep.inputs["k"] = k;
      words = basis_g24_image(fam.r, fam.p, k);
    } else {
      ModuleSpec spec = module_text.empty() ? fam.default_module()
                                            : ModuleSpec::parse(module_text);
      rep.inputs["module"] = spec.str();
      words = express_words(fam, spec);
    }
    for (const MonomialWord& w : words) {
      listing.push_back(w.str());
      say(as_json, "  " + w.str());
    }
    count = static_cast<long>(words.size());
  } else {  // preservers
    ModuleSpec spec = ModuleSpec::parse(module_text);
    rep.inputs["module"] = spec.str();
    rep.inputs["k"] = k;
    rep.inputs["nonpositive"] = nonpositive;
    std::vector<DiffOp> ops = nonpositive
                                  ? enumerate_preservers_nonpositive(spec, k)
                                  : enumerate_preservers(spec, k);
    for (const DiffOp& op : ops) {
      listing.push_back(to_string(op));
      say(as_json, "  " + to_string(op));
    }
    count = static_cast<long>(ops.size());
  }
  say(as_json, std::to_string(count) + " entries");
  rep.results["entries"] = listing;
  rep.results["count"] = count;
  return emit(rep, as_json);
}

int cmd_report_all(int cap, unsigned seed, bool as_json) {
  Report rep;
  rep.command = "report-all";
  rep.inputs["cap"] = cap;
  rep.inputs["seed"] = seed;
  CheckList checks;

  // Relations and commutator closure.
  checks.add("sl2 casimir, n=0..6", [&] {
    for (long n = 0; n <= 6; ++n)
      if (!verify_casimir_sl2(n)) return false;
    return true;
  }());
  checks.add("g15 nine relations, n=0..4", [&] {
    for (long n = 0; n <= 4; ++n)
      if (!verify_relations_sl3(n).all_pass) return false;
    return true;
  }());
  for (const char* f : {"sl2(2)", "g11(1,1)", "g15(1)", "g24(2,2)"})
    checks.add(std::string(f) + " commutator closure",
               verify_closure(GeneratorFamily::parse(f)).closed);

  // Counting formulas.
  {
    bool ok = true;
    for (int kk = 0; kk <= 4; ++kk)
      ok = ok &&
           enveloping_kernel_dim_sl2(2, kk) ==
               static_cast<long>(kk + 1) * kk * (kk - 1) / 6 &&
           symbol_kernel_dim_sl2(kk) == static_cast<long>(kk) * (kk - 1) / 2;
    checks.add("sl2 kernel dimensions through degree 4", ok);
  }
  checks.add("g15 image dimensions at n=2",
             realized_rank(basis_sl3(2, 2), GeneratorFamily::g15(2)) == 36);
  {
    bool ok = true;
    for (int kk = 0; kk <= 2; ++kk)
      ok = ok && realized_rank(basis_g24_image(2, 3, kk),
                               GeneratorFamily::g24(2, 3)) ==
                     image_count_g24(2, kk);
    checks.add("g24(2,3) image dimensions through degree 2", ok);
  }
  checks.add("g24(2,2) effective basis has 13 words",
             static_cast<long>(basis_g24_effective(2, 2, 1).size()) == 13 &&
                 realized_rank(basis_g24_effective(2, 2, 1),
                               GeneratorFamily::g24(2, 2)) == 13);

  // Preservation.
  for (const char* f : {"sl2(3)", "g11(2,2)", "g15(2)", "g24(2,4)"}) {
    GeneratorFamily fam = GeneratorFamily::parse(f);
    bool ok = true;
    for (const NamedOp& g : build_generators(fam))
      ok = ok && preserves(g.op, fam.default_module());
    checks.add(std::string(f) + " generators preserve the module", ok);
  }

  // Super closures.
  struct SuperCase {
    const char* text;
    bool finite;
    long dim;
  };
  for (const SuperCase& sc :
       {SuperCase{"sR(2,2,0,0)", true, 9}, SuperCase{"sR(3,2,1,0)", true, 11},
        SuperCase{"sR(2,3,0,1)", true, 11}, SuperCase{"sT(2,0)", true, 11},
        SuperCase{"sT(3,1)", true, 15}, SuperCase{"sS(2,3)", true, 14}}) {
    ClosureResult res = closure_analysis(SuperFamily::parse(sc.text), cap);
    checks.add(std::string(sc.text) + " closure dim " + std::to_string(sc.dim),
               res.stabilized == sc.finite && res.dim == sc.dim);
  }

  // Decompositions.
  {
    Decomposition dec = express(parse_diffop("Dx"), GeneratorFamily::g15(2),
                                ModuleSpec::tri(2));
    checks.add("Dx over g15(2) is the word J4",
               dec.status() == Decomposition::Status::Expressible &&
                   dec.word_coefficients.size() == 1 &&
                   dec.word_coefficients[0].first.str() == "J4" &&
                   dec.word_coefficients[0].second == 1);
  }
  {
    Decomposition dec = express(parse_diffop("y*Dx^2"),
                                GeneratorFamily::g24(2, 4),
                                ModuleSpec::stair(2, 4, 2));
    checks.add("y*Dx^2 over g24(2,4) is not lie-algebraic",
               dec.status() == Decomposition::Status::NotLieAlgebraic);
  }
  {
    // Seeded sweep: random combinations of preservers decompose exactly.
    std::mt19937 rng(seed);
    std::vector<DiffOp> ops = enumerate_preservers(ModuleSpec::tri(2), 2);
    ExpressContext ctx(GeneratorFamily::g15(2), ModuleSpec::tri(2));
    bool ok = true;
    for (int trial = 0; trial < 3 && ok; ++trial) {
      DiffOp T;
      for (const DiffOp& op : ops) {
        long c = static_cast<long>(rng() % 7) - 3;
        if (c != 0) T += QQ(c) * op;
      }
      Decomposition dec = ctx.express(T);
      DiffOp rebuilt = dec.kernel_remainder + dec.residue;
      std::map<std::string, DiffOp> gens;
      for (const NamedOp& g : build_generators(GeneratorFamily::g15(2)))
        gens[g.name] = g.op;
      for (const auto& [w, c] : dec.word_coefficients)
        rebuilt += c * realize(w, gens);
      ok = ok && rebuilt == T && dec.residue.is_zero();
    }
    checks.add("seeded preserver sweep on T(2) reconstructs exactly", ok);
  }

  for (const auto& it : checks.items)
    say(as_json, std::string(it["pass"].get<bool>() ? "pass" : "FAIL") + "  " +
                     it["check"].get<std::string>());
  say(as_json, std::to_string(checks.passed) + "/" +
                   std::to_string(checks.items.size()) + " checks pass");
  rep.results["checks"] = checks.items;
  rep.pass = checks.all;
  return emit(rep, as_json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "opmod: exact-arithmetic differential operators preserving polynomial "
      "modules"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a JSON report instead of text");

  std::string family, module_text, super, op_text, target, kind;
  int k = 2, l = 1, cap = 6;
  unsigned seed = 0;
  bool nonpositive = false;
  std::vector<std::string> blocks = {"0", "0", "0", "0"};

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->fallthrough();
  verify->add_option("target", target,
                     "relations | closure | counts | preservation")
      ->required();
  verify->add_option("--family", family, "generator family, e.g. g15(3)");
  verify->add_option("--module", module_text, "module, e.g. T(3)");
  verify->add_option("--super", super, "super family, e.g. sT(4,2)");
  verify->add_option("--k", k, "degree bound for counts");
  verify->add_option("--cap", cap, "bracket rounds before giving up");

  CLI::App* dec = app.add_subcommand(
      "decompose", "express an operator over generator words");
  dec->fallthrough();
  dec->add_option("operator", op_text, "operator text, e.g. \"x^2*Dx - 2*x\"");
  dec->add_option("--family", family, "generator family");
  dec->add_option("--module", module_text, "module (defaults to the family's)");
  dec->add_option("--super", super, "super family for 2x2 matrix operators");
  dec->add_option("--t11", blocks[0], "matrix entry acting inside component 1");
  dec->add_option("--t12", blocks[1], "matrix entry from component 2 to 1");
  dec->add_option("--t21", blocks[2], "matrix entry from component 1 to 2");
  dec->add_option("--t22", blocks[3], "matrix entry acting inside component 2");

  CLI::App* enu = app.add_subcommand(
      "enumerate", "list words, preservers, or maximal-length monomials");
  enu->fallthrough();
  enu->add_option("kind", kind, "basis | preservers | maximal-length")
      ->required();
  enu->add_option("--family", family, "generator family");
  enu->add_option("--module", module_text, "module");
  enu->add_option("--k", k, "order / degree bound")->default_val(-1);
  enu->add_option("--l", l, "exact word length for maximal-length");
  enu->add_flag("--nonpositive", nonpositive,
                "restrict preservers to non-positive y-bidegree terms");

  CLI::App* rall = app.add_subcommand("report-all", "run the whole battery");
  rall->fallthrough();
  rall->add_option("--cap", cap, "bracket rounds before giving up");
  rall->add_option("--seed", seed, "seed for the randomized sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      if (target == "relations") return cmd_verify_relations(family, as_json);
      if (target == "counts") return cmd_verify_counts(family, k, as_json);
      if (target == "preservation")
        return cmd_verify_preservation(family, module_text, super, as_json);
      if (target == "closure")
        return cmd_verify_closure(family, super, cap, as_json);
      std::cerr << "unknown verify target \"" << target << "\"\n";
      return 2;
    }
    if (dec->parsed()) {
      if (super.empty() && op_text.empty()) {
        std::cerr << "decompose: give an operator (or --super with --tij)\n";
        return 2;
      }
      return cmd_decompose(op_text, family, module_text, super, blocks,
                           as_json);
    }
    if (enu->parsed()) {
      if (kind != "basis" && kind != "preservers" && kind != "maximal-length") {
        std::cerr << "unknown enumerate kind \"" << kind << "\"\n";
        return 2;
      }
      return cmd_enumerate(kind, family, module_text, k, l, nonpositive,
                           as_json);
    }
    if (rall->parsed()) return cmd_report_all(cap, seed, as_json);
  } catch (const CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad argument: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
