#pragma once

#include <stdexcept>
#include <string>

#include "weyl/diffop.hpp"

namespace weyl {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grammar (whitespace-insensitive, '*' optional between factors):
///   expr    := [+|-] term { (+|-) term }
///   term    := factor { [*] factor }
///   factor  := primary [ ^ nat ]
///   primary := int[/int] | x | y | Dx | Dy | ( expr )
/// Products compose left to right, so "Dx*x" parses to x*Dx + 1.
DiffOp parse_diffop(const std::string& text);

/// parse_diffop restricted to order zero.
Poly2 parse_poly2(const std::string& text);

QQ parse_rational(const std::string& text);

}  // namespace weyl
