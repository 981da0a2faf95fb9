#include "heightlab/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "heightlab/algebra.hpp"

namespace heightlab {

ParseError::ParseError(const std::string& message, int line, int column, std::string token)
    : DomainError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                  ": " + message + (token.empty() ? "" : " '" + token + "'")),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

constexpr unsigned kMaxExponent = 4096;

enum class Tok { Number, Z, T, Inf, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma, Semicolon, End };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i + k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    i += n;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), line, column});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      std::string word(s.substr(i, j - i));
      Tok kind;
      if (word == "z") kind = Tok::Z;
      else if (word == "t") kind = Tok::T;
      else if (word == "inf") kind = Tok::Inf;
      else throw ParseError("unknown identifier", line, column, word);
      out.push_back({kind, word, line, column});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semicolon; break;
      default: throw ParseError("unexpected character", line, column, std::string(1, c));
    }
    out.push_back({kind, std::string(1, c), line, column});
    advance(1);
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

/// Polynomial in z with coefficients in Q[t], index k = z^k.
struct ZPoly {
  std::vector<Poly> c;

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  std::size_t low_order() const {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (!c[k].is_zero()) return k;
    }
    return 0;
  }
  friend bool operator==(const ZPoly&, const ZPoly&) = default;
};

ZPoly constant(const Poly& p) {
  ZPoly r;
  r.c.push_back(p);
  r.trim();
  return r;
}

ZPoly add(const ZPoly& a, const ZPoly& b, bool subtract) {
  ZPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] = a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] = subtract ? r.c[k] - b.c[k] : r.c[k] + b.c[k];
  r.trim();
  return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.resize(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (!b.c[j].is_zero()) r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  r.trim();
  return r;
}

/// num / den with den != 0.
struct Fraction {
  ZPoly num, den;
};

Fraction reduce(Fraction f) {
  // Cancel a common power of z and fold rational-constant denominators.
  if (!f.num.is_zero()) {
    std::size_t k = std::min(f.num.low_order(), f.den.low_order());
    if (k > 0) {
      f.num.c.erase(f.num.c.begin(), f.num.c.begin() + static_cast<std::ptrdiff_t>(k));
      f.den.c.erase(f.den.c.begin(), f.den.c.begin() + static_cast<std::ptrdiff_t>(k));
    }
  } else {
    f.den = constant(Poly(1));
  }
  if (f.den.degree() == 0 && f.den.c[0].is_constant()) {
    Rational inv = Rational(1) / f.den.c[0].coeff(0);
    for (Poly& p : f.num.c) p *= inv;
    f.den = constant(Poly(1));
  }
  return f;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg, t.line, t.column, t.kind == Tok::End ? "end of input" : t.text);
  }
  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what + ", found");
    take();
  }

  Fraction expr() {
    Fraction acc = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const bool minus = take().kind == Tok::Minus;
      Fraction rhs = term();
      if (acc.den == rhs.den) {
        acc.num = add(acc.num, rhs.num, minus);
      } else {
        acc.num = add(mul(acc.num, rhs.den), mul(rhs.num, acc.den), minus);
        acc.den = mul(acc.den, rhs.den);
      }
      acc = reduce(std::move(acc));
    }
    return acc;
  }

  Fraction term() {
    Fraction acc = unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      const Token op = take();
      Fraction rhs = unary();
      if (op.kind == Tok::Star) {
        acc.num = mul(acc.num, rhs.num);
        acc.den = mul(acc.den, rhs.den);
      } else {
        if (rhs.num.is_zero()) throw DomainError("division by the zero polynomial at line " + std::to_string(op.line) + ", column " + std::to_string(op.column));
        acc.num = mul(acc.num, rhs.den);
        acc.den = mul(acc.den, rhs.num);
      }
      acc = reduce(std::move(acc));
    }
    return acc;
  }

  Fraction unary() {
    if (at(Tok::Minus)) {
      take();
      Fraction f = unary();
      for (Poly& p : f.num.c) p = -p;
      return f;
    }
    if (at(Tok::Plus)) {
      take();
      return unary();
    }
    return power();
  }

  Fraction power() {
    Fraction base = primary();
    if (!at(Tok::Caret)) return base;
    take();
    if (!at(Tok::Number)) fail("expected a nonnegative integer exponent, found");
    const Token e = take();
    if (e.text.size() > 6 || std::stoul(e.text) > kMaxExponent) {
      throw ParseError("exponent too large", e.line, e.column, e.text);
    }
    const auto k = static_cast<unsigned>(std::stoul(e.text));
    if (at(Tok::Caret)) fail("chained exponent; use parentheses");
    Fraction r{constant(Poly(1)), constant(Poly(1))};
    for (unsigned i = 0; i < k; ++i) {
      r.num = mul(r.num, base.num);
      r.den = mul(r.den, base.den);
    }
    return reduce(std::move(r));
  }

  Fraction primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        Rational v(Integer(take().text));
        return {constant(Poly(v)), constant(Poly(1))};
      }
      case Tok::T:
        take();
        return {constant(Poly::variable()), constant(Poly(1))};
      case Tok::Z: {
        take();
        ZPoly z;
        z.c = {Poly(), Poly(1)};
        return {z, constant(Poly(1))};
      }
      case Tok::LParen: {
        take();
        Fraction f = expr();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        fail("unexpected token");
    }
  }

  std::vector<Poly> coefficient_list() {
    expect(Tok::LBracket, "'['");
    std::vector<Poly> out;
    for (;;) {
      const Token start = peek();
      Fraction f = expr();
      if (f.num.degree() > 0 || f.den.degree() > 0) {
        throw ParseError("coefficients must not involve z", start.line, start.column, start.text);
      }
      if (!f.den.c[0].is_constant()) {
        throw ParseError("coefficients must be polynomials in t", start.line, start.column, start.text);
      }
      out.push_back(f.num.is_zero() ? Poly() : f.num.c[0] * (Rational(1) / f.den.c[0].coeff(0)));
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      expect(Tok::RBracket, "',' or ']'");
      return out;
    }
  }

  std::size_t pos_ = 0;
  std::vector<Token> toks_;
};

RationalMapFamily from_fraction(const Fraction& f) {
  const int d = std::max(f.num.degree(), f.den.degree());
  if (d < 2) throw DomainError("family degree must be at least 2 (got " + std::to_string(std::max(d, 0)) + ")");
  std::vector<Poly> p(static_cast<std::size_t>(d) + 1), q(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    const auto k = static_cast<std::size_t>(d - j);
    if (k < f.num.c.size()) p[static_cast<std::size_t>(j)] = f.num.c[k];
    if (k < f.den.c.size()) q[static_cast<std::size_t>(j)] = f.den.c[k];
  }
  if (std::all_of(p.begin(), p.end(), [](const Poly& x) { return x.is_zero(); })) {
    throw DomainError("degenerate family: numerator is identically zero");
  }
  return RationalMapFamily::make(BiForm(d, std::move(p)), BiForm(d, std::move(q)));
}

}  // namespace

RationalMapFamily parse_family(std::string_view text) {
  Parser ps(text);
  if (ps.at(Tok::LBracket)) {
    std::vector<Poly> p = ps.coefficient_list();
    ps.expect(Tok::Semicolon, "';'");
    std::vector<Poly> q = ps.coefficient_list();
    if (!ps.at(Tok::End)) ps.fail("unexpected trailing input");
    if (p.size() != q.size()) throw DomainError("coefficient lists have different lengths");
    const int d = static_cast<int>(p.size()) - 1;
    if (d < 2) throw DomainError("family degree must be at least 2");
    return RationalMapFamily::make(BiForm(d, std::move(p)), BiForm(d, std::move(q)));
  }
  if (ps.at(Tok::End)) ps.fail("empty family expression:");
  Fraction f = ps.expr();
  if (!ps.at(Tok::End)) ps.fail("unexpected token");
  return from_fraction(f);
}

ProjPointK parse_point(std::string_view text) {
  Parser ps(text);
  if (ps.at(Tok::Inf)) {
    ps.take();
    if (!ps.at(Tok::End)) ps.fail("unexpected token");
    return ProjPointK::infinity();
  }
  if (ps.at(Tok::End)) ps.fail("empty point expression:");
  const Token start = ps.peek();
  Fraction f = ps.expr();
  if (!ps.at(Tok::End)) ps.fail("unexpected token");
  if (f.num.degree() > 0 || f.den.degree() > 0) {
    throw ParseError("a point is an expression in t only; found z", start.line, start.column, start.text);
  }
  Poly num = f.num.is_zero() ? Poly() : f.num.c[0];
  return ProjPointK::normalize(num, f.den.c[0]);
}

Rational parse_rational(std::string_view text) {
  ProjPointK p = parse_point(text);
  if (!p.is_constant() || p.is_infinity()) throw DomainError("expected a rational number, got '" + std::string(text) + "'");
  return p.a1().coeff(0) / p.a2().coeff(0);
}

}  // namespace heightlab
