#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "schreier/family.hpp"
#include "schreier/normspace.hpp"
#include "schreier/ordinal.hpp"
#include "schreier/ramsey.hpp"

namespace schreier {

// Syntax error with position information; offset is 0-based, line and
// column are 1-based. `expected` carries a token hint for diagnostics.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, size_t offset, int line, int col, std::string expected);
  size_t offset;
  int line;
  int col;
  std::string expected;
};

// Each parser consumes the whole input (modulo surrounding whitespace) and
// inverts the corresponding to_string(): parse(print(x)) == x.
Ordinal parse_ordinal(std::string_view text);
FinSet parse_finset(std::string_view text);
Relabeling parse_relabeling(std::string_view text);
Family parse_family(std::string_view text);
Rational parse_rational(std::string_view text);
SparseVec parse_sparsevec(std::string_view text);
Space parse_space(std::string_view text);
ColorPred parse_color_pred(std::string_view text);
Coloring parse_coloring(std::string_view text);  // accepts all0 / all1 / parity sugar
ChainPred parse_chain_pred(std::string_view text);
Selector parse_selector(std::string_view text);

std::string rational_to_string(const Rational& q);

}  // namespace schreier
