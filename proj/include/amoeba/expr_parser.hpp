#pragma once

// Text format for Laurent polynomials.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := number | imag | 'i' | var ('^' int)? | '(' expr ')'
//   var    := 'z' digits            (1-based index)
//   int    := ['-'] digits
//   imag   := number 'i'            (e.g. "3i", as in "(1+3i)")
//
// Numbers are decimal doubles, scientific notation allowed. Implicit
// multiplication ("z1z2", "2z1") is a syntax error.

#include <string>
#include <string_view>
#include <vector>

#include "amoeba/errors.hpp"
#include "amoeba/laurent.hpp"

namespace amoeba {

enum class TokenKind {
  Number,
  Imaginary,  // number with an 'i' suffix, or a bare 'i'
  Variable,
  Caret,
  Star,
  Plus,
  Minus,
  LParen,
  RParen,
};

struct ExprToken {
  TokenKind kind;
  std::string text;
  Span span;
};

/// Splits text into tokens; throws ParseError (SyntaxError) on stray input.
std::vector<ExprToken> tokenize(std::string_view text);

LaurentPoly parse_poly(std::string_view text, int nvars);

/// Canonical text form. parse_poly(format_poly(f), f.nvars()) == f exactly.
std::string format_poly(const LaurentPoly& f);

}  // namespace amoeba
