#pragma once
// Text to rational function in a single named variable.
//
// Accepts + - * / ^, parentheses, implicit multiplication ("4r(r-1)"),
// integers and exact decimals ("0.5" is 1/2). Exponents must be integer
// literals, optionally negative.

#include <stdexcept>
#include <string>
#include <string_view>

#include "ecfam/ratfunc.hpp"

namespace ecfam {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Throws ParseError on syntax errors, on identifiers other than `var`, and
/// ZeroDenominatorError when the expression divides by zero.
RatFunc parse_ratfunc(std::string_view text, std::string_view var);

}  // namespace ecfam
