#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "weyl/diffop.hpp"
#include "weyl/parse.hpp"

using namespace weyl;

namespace {
const DiffOp Dx = DiffOp::derivative(1, 0);
const DiffOp Dy = DiffOp::derivative(0, 1);
const DiffOp X = DiffOp(Poly2::x());
const DiffOp Y = DiffOp(Poly2::y());
}  // namespace

TEST_CASE("normal ordering via the Leibniz rule") {
  CHECK(compose(Dx, X) == DiffOp::term(Poly2::x(), 1, 0) + DiffOp::identity());
  CHECK(commutator(Dx, X) == DiffOp::identity());
  CHECK(commutator(Dy, Y) == DiffOp::identity());
  CHECK(commutator(Dx, Y).is_zero());
  CHECK(commutator(Dx, Dy).is_zero());
  // Dx^2 o x^2 = x^2 Dx^2 + 4x Dx + 2
  CHECK(compose(DiffOp::derivative(2, 0), DiffOp(Poly2::monomial(2, 0))) ==
        DiffOp::term(Poly2::monomial(2, 0), 2, 0) +
            DiffOp::term(QQ(4) * Poly2::x(), 1, 0) + QQ(2) * DiffOp::identity());
}

TEST_CASE("composition is associative") {
  std::vector<DiffOp> ops = {
      parse_diffop("x^2*Dx - 2*x"), parse_diffop("y*Dx^2 + x*Dy"),
      parse_diffop("Dx*Dy - 1/3"), parse_diffop("x*y*Dy^2 + Dx")};
  for (const DiffOp& a : ops)
    for (const DiffOp& b : ops)
      for (const DiffOp& c : ops)
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
}

TEST_CASE("apply is a homomorphism from composition to function application") {
  std::vector<DiffOp> ops = {parse_diffop("x^2*Dx - 2*x"),
                             parse_diffop("y*Dx^2 + x*Dy"),
                             parse_diffop("Dx*Dy + y")};
  std::vector<Poly2> polys = {parse_poly2("x^3 - x*y"), parse_poly2("y^2 + 2"),
                              parse_poly2("x^2*y^2")};
  for (const DiffOp& a : ops)
    for (const DiffOp& b : ops)
      for (const Poly2& p : polys)
        CHECK(apply(compose(a, b), p) == apply(a, apply(b, p)));
}

TEST_CASE("lowering at the top of the ladder") {
  // x^2 Dx - 2x annihilates x^2 and raises x to x^2.
  DiffOp jplus = parse_diffop("x^2*Dx - 2*x");
  CHECK(apply(jplus, parse_poly2("x^2")).is_zero());
  CHECK(apply(jplus, Poly2::x()) == -Poly2::monomial(2, 0));
}

TEST_CASE("order and coefficients") {
  DiffOp t = parse_diffop("x*Dx^2*Dy + y^2*Dy - 5");
  CHECK(t.order() == 3);
  CHECK(t.coeff(2, 1) == Poly2::x());
  CHECK(t.coeff(0, 1) == Poly2::monomial(0, 2));
  CHECK(t.coeff(0, 0) == Poly2(QQ(-5)));
  CHECK(DiffOp().order() == -1);
}

TEST_CASE("power") {
  DiffOp e = parse_diffop("x*Dx");
  CHECK(power(e, 0) == DiffOp::identity());
  CHECK(power(e, 2) == parse_diffop("x^2*Dx^2 + x*Dx"));
  CHECK(power(Dx, 3) == DiffOp::derivative(3, 0));
}

TEST_CASE("bidegree decomposition sums back and is homogeneous") {
  DiffOp t = parse_diffop("x^3*Dx + y*Dx^2 + x*y*Dy^2 + 7");
  auto parts = bidegree_decompose(t);
  DiffOp sum;
  for (const auto& [d, part] : parts) {
    sum += part;
    for (const auto& [deriv, f] : part.terms())
      for (const auto& [mono, c] : f.terms()) {
        CHECK(mono.i - deriv.i == d.dx);
        CHECK(mono.j - deriv.j == d.dy);
      }
  }
  CHECK(sum == t);
  CHECK(parts.size() == 4);
}

TEST_CASE("staircase-graded total degree") {
  CHECK(total_degree(parse_diffop("x^2*Dx - 2*x"), 2) == 1);
  CHECK(total_degree(parse_diffop("x^2*Dy"), 2) == 0);  // (2,-1): 2 + 2*(-1)
  CHECK(total_degree(parse_diffop("x*Dx + y*Dy"), 3) == 0);
  CHECK_FALSE(total_degree(parse_diffop("x + y"), 2).has_value());
  CHECK(total_degree(DiffOp(), 2) == 0);
}

TEST_CASE("text form round-trips bit-exactly") {
  for (const char* text :
       {"x^2*Dx - 2*x", "y*Dx^2", "Dx*Dy - 1/3", "x*y*Dy^2 + Dx - 7/2",
        "x^3*y^2*Dx^2*Dy + 1"}) {
    DiffOp t = parse_diffop(text);
    CHECK(parse_diffop(to_string(t)) == t);
  }
  CHECK(to_string(DiffOp()) == "0");
  // Products compose left to right: Dx*x re-normal-orders.
  CHECK(parse_diffop("Dx*x") == parse_diffop("x*Dx + 1"));
  CHECK_THROWS_AS(parse_diffop("x^"), ParseError);
  CHECK_THROWS_AS(parse_diffop("(x"), ParseError);
  CHECK_THROWS_AS(parse_diffop("z + 1"), ParseError);
}
