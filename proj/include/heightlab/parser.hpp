#pragma once

#include <string>
#include <string_view>

#include "heightlab/errors.hpp"
#include "heightlab/family.hpp"
#include "heightlab/proj_point.hpp"

namespace heightlab {

/// Syntax error with a 1-based source position and the offending token.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& message, int line, int column, std::string token);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  int line_, column_;
  std::string token_;
};

/// A family given either as a rational expression in z with coefficients
/// in Q[t], e.g. "(z^2 - t)^2 / (4*z*(z-1)*(z-t))", or as two bracketed
/// coefficient lists "[p0, ..., pd]; [q0, ..., qd]" where entry j
/// multiplies x^(d-j) y^j.
///
/// Grammar: sums of products of powers, with integer literals, z, t,
/// parentheses, + - * / and ^ with a nonnegative integer exponent. Unary
/// minus binds looser than ^ and tighter than * and /.
RationalMapFamily parse_family(std::string_view text);

/// A rational expression in t, or "inf".
ProjPointK parse_point(std::string_view text);

/// An exact rational such as "3", "-1/2".
Rational parse_rational(std::string_view text);

}  // namespace heightlab
