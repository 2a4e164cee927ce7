#include "amoeba/expr_parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace amoeba {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

[[noreturn]] void syntax_error(const std::string& msg, Span span) {
  throw ParseError(ErrorCode::SyntaxError, msg, span);
}

class Parser {
 public:
  Parser(std::string_view text, std::vector<ExprToken> tokens, int nvars)
      : text_(text), tokens_(std::move(tokens)), nvars_(nvars) {}

  LaurentPoly parse() {
    LaurentPoly result = expr();
    if (pos_ < tokens_.size()) {
      const auto& t = tokens_[pos_];
      syntax_error("unexpected '" + t.text + "', expected an operator", t.span);
    }
    return result;
  }

 private:
  const ExprToken* peek() const {
    return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr;
  }

  bool accept(TokenKind k) {
    if (auto* t = peek(); t && t->kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }

  Span end_span() const { return {text_.size(), text_.size()}; }

  LaurentPoly expr() {
    bool negate = false;
    if (accept(TokenKind::Minus)) {
      negate = true;
    } else {
      accept(TokenKind::Plus);
    }
    LaurentPoly acc = term();
    if (negate) acc = -acc;
    while (auto* t = peek()) {
      if (t->kind == TokenKind::Plus) {
        ++pos_;
        acc += term();
      } else if (t->kind == TokenKind::Minus) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  LaurentPoly term() {
    LaurentPoly acc = factor();
    while (accept(TokenKind::Star)) acc *= factor();
    return acc;
  }

  LaurentPoly factor() {
    const ExprToken* t = peek();
    if (!t) syntax_error("unexpected end of input", end_span());
    ++pos_;
    switch (t->kind) {
      case TokenKind::Number:
        return LaurentPoly::constant(nvars_, number_value(*t));
      case TokenKind::Imaginary: {
        const double v = t->text == "i" ? 1.0 : number_value(*t);
        return LaurentPoly::constant(nvars_, Complex(v, 0.0) * Complex(0.0, 1.0));
      }
      case TokenKind::Variable:
        return variable(*t);
      case TokenKind::LParen: {
        LaurentPoly inner = expr();
        if (!accept(TokenKind::RParen)) {
          const auto* c = peek();
          syntax_error("expected ')'", c ? c->span : end_span());
        }
        return inner;
      }
      default:
        syntax_error("unexpected '" + t->text + "'", t->span);
    }
  }

  double number_value(const ExprToken& t) const {
    std::string digits = t.text;
    if (!digits.empty() && digits.back() == 'i') digits.pop_back();
    char* end = nullptr;
    const double v = std::strtod(digits.c_str(), &end);
    if (end != digits.c_str() + digits.size() || !std::isfinite(v)) {
      syntax_error("malformed number '" + t.text + "'", t.span);
    }
    return v;
  }

  LaurentPoly variable(const ExprToken& t) {
    const long index = std::strtol(t.text.c_str() + 1, nullptr, 10);
    if (index < 1 || index > nvars_) {
      throw ParseError(ErrorCode::UnknownVariable,
                       "unknown variable '" + t.text + "' (polynomial has " +
                           std::to_string(nvars_) + " variables)",
                       t.span);
    }
    Exponent e(nvars_, 0);
    e[index - 1] = 1;
    if (accept(TokenKind::Caret)) {
      bool neg = accept(TokenKind::Minus);
      const ExprToken* p = peek();
      if (!p || p->kind != TokenKind::Number ||
          p->text.find_first_not_of("0123456789") != std::string::npos) {
        syntax_error("expected an integer exponent", p ? p->span : end_span());
      }
      ++pos_;
      const long long k = std::strtoll(p->text.c_str(), nullptr, 10);
      if (p->text.size() > 9 || k > kMaxExponent) {
        throw ParseError(ErrorCode::SyntaxError, "exponent out of range", p->span);
      }
      e[index - 1] = static_cast<std::int32_t>(neg ? -k : k);
    }
    return LaurentPoly::monomial(1.0, e);
  }

  std::string_view text_;
  std::vector<ExprToken> tokens_;
  int nvars_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_monomial(const Exponent& e) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'z' + std::to_string(j + 1);
    if (e[j] != 1) out += '^' + std::to_string(e[j]);
  }
  return out;
}

}  // namespace

std::vector<ExprToken> tokenize(std::string_view text) {
  std::vector<ExprToken> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto push = [&](TokenKind k, std::size_t end) {
      out.push_back({k, std::string(text.substr(start, end - start)), {start, end}});
      i = end;
    };
    switch (c) {
      case '^': push(TokenKind::Caret, i + 1); continue;
      case '*': push(TokenKind::Star, i + 1); continue;
      case '+': push(TokenKind::Plus, i + 1); continue;
      case '-': push(TokenKind::Minus, i + 1); continue;
      case '(': push(TokenKind::LParen, i + 1); continue;
      case ')': push(TokenKind::RParen, i + 1); continue;
      default: break;
    }
    if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(text[i + 1]))) {
      std::size_t j = i;
      while (j < n && is_digit(text[j])) ++j;
      if (j < n && text[j] == '.') {
        ++j;
        while (j < n && is_digit(text[j])) ++j;
      }
      if (j < n && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < n && is_digit(text[k])) {
          while (k < n && is_digit(text[k])) ++k;
          j = k;
        }
      }
      if (j < n && text[j] == 'i' && !(j + 1 < n && is_alnum(text[j + 1]))) {
        push(TokenKind::Imaginary, j + 1);
      } else {
        push(TokenKind::Number, j);
      }
      continue;
    }
    if (c == 'i' && !(i + 1 < n && is_alnum(text[i + 1]))) {
      push(TokenKind::Imaginary, i + 1);
      continue;
    }
    if (c == 'z' && i + 1 < n && is_digit(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < n && is_digit(text[j])) ++j;
      push(TokenKind::Variable, j);
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && is_alnum(text[j])) ++j;
    syntax_error("unexpected '" + std::string(text.substr(i, j - i)) + "'", {i, j});
  }
  return out;
}

LaurentPoly parse_poly(std::string_view text, int nvars) {
  auto tokens = tokenize(text);
  if (tokens.empty()) {
    throw ParseError(ErrorCode::EmptyInput, "empty polynomial expression",
                     {0, text.size()});
  }
  return Parser(text, std::move(tokens), nvars).parse();
}

std::string format_poly(const LaurentPoly& f) {
  if (f.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    const std::string mono = format_monomial(e);
    bool negative = false;
    std::string coeff;
    if (c.imag() == 0.0) {
      negative = std::signbit(c.real());
      const double a = std::abs(c.real());
      if (a != 1.0 || mono.empty()) coeff = format_number(a);
    } else if (c.real() == 0.0) {
      negative = std::signbit(c.imag());
      const double b = std::abs(c.imag());
      coeff = b == 1.0 ? "i" : format_number(b) + "*i";
    } else {
      coeff = "(" + format_number(c.real()) +
              (std::signbit(c.imag()) ? "-" : "+") +
              format_number(std::abs(c.imag())) + "*i)";
    }
    std::string body = coeff;
    if (!mono.empty()) body = coeff.empty() ? mono : coeff + "*" + mono;
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace amoeba
