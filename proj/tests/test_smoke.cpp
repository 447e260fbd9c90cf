#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weyl/superops.hpp"

using namespace weyl;

TEST_CASE("library links and basic ops work") {
  DiffOp dx = DiffOp::derivative(1, 0);
  DiffOp x = DiffOp::term(Poly2::monomial(1, 0), 0, 0);
  CHECK(commutator(dx, x) == DiffOp::identity());
}
