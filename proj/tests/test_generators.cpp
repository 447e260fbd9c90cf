#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "weyl/generators.hpp"
#include "weyl/parse.hpp"

using namespace weyl;

namespace {
std::map<std::string, DiffOp> gen_map(const GeneratorFamily& fam) {
  std::map<std::string, DiffOp> g;
  for (const NamedOp& it : build_generators(fam)) g[it.name] = it.op;
  return g;
}
}  // namespace

TEST_CASE("generator counts and text forms") {
  CHECK(GeneratorFamily::sl2(3).generator_count() == 3);
  CHECK(GeneratorFamily::g11(2, 2).generator_count() == 6);
  CHECK(GeneratorFamily::g15(3).generator_count() == 8);
  for (long r = 1; r <= 4; ++r)
    CHECK(GeneratorFamily::g24(r, 5).generator_count() ==
          static_cast<size_t>(r + 5));
  for (const char* text : {"sl2(3)", "g11(2,4)", "g15(2)", "g24(3,5)"}) {
    GeneratorFamily fam = GeneratorFamily::parse(text);
    CHECK(fam.str() == text);
    CHECK(build_generators(fam).size() == fam.generator_count());
  }
}

TEST_CASE("the realizations match their defining formulas") {
  auto sl2 = gen_map(GeneratorFamily::sl2(3));
  CHECK(sl2.at("J+") == parse_diffop("x^2*Dx - 3*x"));
  CHECK(sl2.at("J-") == parse_diffop("Dx"));
  CHECK(sl2.at("J0") == parse_diffop("x*Dx - 3/2"));

  auto g11 = gen_map(GeneratorFamily::g11(2, 1));
  CHECK(g11.at("K+") == parse_diffop("y^2*Dy - y"));
  CHECK(g11.at("K0") == parse_diffop("y*Dy - 1/2"));
  CHECK(g11.at("J+") == parse_diffop("x^2*Dx - 2*x"));

  auto g15 = gen_map(GeneratorFamily::g15(3));
  CHECK(g15.at("J1") == parse_diffop("x^2*Dx + x*y*Dy - 3*x"));
  CHECK(g15.at("J2") == parse_diffop("x*y*Dx + y^2*Dy - 3*y"));
  CHECK(g15.at("J3") == parse_diffop("y*Dx"));
  CHECK(g15.at("J4") == parse_diffop("Dx"));
  CHECK(g15.at("J5") == parse_diffop("Dy"));
  CHECK(g15.at("J6") == parse_diffop("x*Dy"));
  CHECK(g15.at("J7") == parse_diffop("x*Dx - 1"));
  CHECK(g15.at("J8") == parse_diffop("y*Dy - 1"));

  auto g24 = gen_map(GeneratorFamily::g24(2, 4));
  CHECK(g24.at("J1") == parse_diffop("Dx"));
  CHECK(g24.at("J2") == parse_diffop("x^2*Dx + 2*x*y*Dy - 4*x"));
  CHECK(g24.at("J3") == parse_diffop("x*Dx - 2"));
  CHECK(g24.at("J4") == parse_diffop("y*Dy"));
  CHECK(g24.at("J5") == parse_diffop("Dy"));
  CHECK(g24.at("J6") == parse_diffop("x*Dy"));
  CHECK(g24.at("J7") == parse_diffop("x^2*Dy"));
}

TEST_CASE("every generator preserves the family's module") {
  for (const char* text : {"sl2(0)", "sl2(4)", "g11(1,3)", "g11(3,3)",
                           "g15(1)", "g15(4)", "g24(1,3)", "g24(2,5)",
                           "g24(3,6)"}) {
    GeneratorFamily fam = GeneratorFamily::parse(text);
    ModuleSpec spec = fam.default_module();
    for (const NamedOp& g : build_generators(fam)) {
      INFO(text, " generator ", g.name);
      CHECK(preserves(g.op, spec));
    }
  }
  // Staircase generators preserve the truncated modules too.
  for (long q = 0; q <= 2; ++q)
    for (const NamedOp& g : build_generators(GeneratorFamily::g24(2, 5)))
      CHECK(preserves(g.op, ModuleSpec::stair(2, 5, q)));
}

TEST_CASE("generators are bidegree-homogeneous with the expected shifts") {
  auto bid = generator_bidegrees(GeneratorFamily::g15(3));
  CHECK(bid.at("J1") == BiDegree{1, 0});
  CHECK(bid.at("J2") == BiDegree{0, 1});
  CHECK(bid.at("J3") == BiDegree{-1, 1});
  CHECK(bid.at("J4") == BiDegree{-1, 0});
  CHECK(bid.at("J5") == BiDegree{0, -1});
  CHECK(bid.at("J6") == BiDegree{1, -1});
  CHECK(bid.at("J7") == BiDegree{0, 0});
  CHECK(bid.at("J8") == BiDegree{0, 0});
  auto sbid = generator_bidegrees(GeneratorFamily::g24(2, 4));
  CHECK(sbid.at("J1") == BiDegree{-1, 0});
  CHECK(sbid.at("J2") == BiDegree{1, 0});
  CHECK(sbid.at("J5") == BiDegree{0, -1});
  CHECK(sbid.at("J7") == BiDegree{2, -1});
}

TEST_CASE("commutators close over the generators and the identity") {
  for (const char* text : {"sl2(2)", "sl2(5)", "g11(2,2)", "g11(1,4)",
                           "g15(1)", "g15(3)", "g24(1,2)", "g24(2,4)",
                           "g24(3,5)"}) {
    StructureTable table = verify_closure(GeneratorFamily::parse(text));
    INFO(text);
    CHECK(table.closed);
    CHECK_FALSE(table.escape.has_value());
    CHECK(table.names.size() ==
          GeneratorFamily::parse(text).generator_count());
  }
}

TEST_CASE("closure coefficients reproduce a known bracket") {
  // [J0, J+] = J+ for the one-variable triple.
  GeneratorFamily fam = GeneratorFamily::sl2(3);
  StructureTable table = verify_closure(fam);
  size_t i0 = 0, iplus = 0;
  for (size_t i = 0; i < table.names.size(); ++i) {
    if (table.names[i] == "J0") i0 = i;
    if (table.names[i] == "J+") iplus = i;
  }
  QVec c = table.coeffs[i0][iplus];
  for (size_t k = 0; k < c.size(); ++k)
    CHECK(c[k] == (k == iplus ? QQ(1) : QQ(0)));
}

TEST_CASE("scalar action of the quadratic central element") {
  for (long n = 0; n <= 10; ++n) {
    CHECK(verify_casimir_sl2(n));
    CHECK_FALSE(verify_casimir_sl2_broken(n));
  }
}

TEST_CASE("the nine quadratic relations hold and the perturbed set fails") {
  for (long n = 0; n <= 6; ++n) {
    RelationReport rep = verify_relations_sl3(n);
    CHECK(rep.all_pass);
    CHECK(rep.checks.size() == 9);
    CHECK_FALSE(verify_relations_sl3_perturbed(n).all_pass);
  }
}

TEST_CASE("family/module compatibility") {
  CHECK(GeneratorFamily::g24(2, 4).matches(ModuleSpec::stair(2, 4, 2)));
  CHECK(GeneratorFamily::g24(2, 4).matches(ModuleSpec::stair(2, 4, 1)));
  CHECK_FALSE(GeneratorFamily::g24(2, 4).matches(ModuleSpec::stair(2, 5, 2)));
  CHECK_FALSE(GeneratorFamily::g15(3).matches(ModuleSpec::rect(3, 3)));
  CHECK(GeneratorFamily::g15(3).default_module() == ModuleSpec::tri(3));
  CHECK(GeneratorFamily::g24(3, 7).default_module() ==
        ModuleSpec::stair(3, 7, 2));
}
