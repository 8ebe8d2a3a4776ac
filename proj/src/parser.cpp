#include "weyl/parser.hpp"

#include <algorithm>
#include <cctype>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

enum class Tok { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Integer, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
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
      default: throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", start);
    }
    out.push_back({kind, std::string(1, static_cast<char>(c)), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseContext& ctx) : tokens_(tokenize(text)), ctx_(ctx) {
    if (ctx.nvars == 0) throw InvalidInput("at least one variable is required");
    if (ctx.ncomponents == 0) throw InvalidInput("at least one unknown is required");
  }

  OperatorVector parseTopLevel(std::size_t defaultComponent) {
    if (defaultComponent >= ctx_.ncomponents) throw InvalidInput("default component out of range");
    OperatorVector acc(ctx_.nvars, ctx_.ncomponents);
    bool negate = false;
    if (at(Tok::Plus)) {
      advance();
    }
    while (true) {
      OperatorVector t = parseTerm();
      std::size_t component = defaultComponent;
      if (at(Tok::LBracket)) component = parseTag();
      OperatorVector placed = t.embed(ctx_.ncomponents, component);
      if (negate) {
        acc -= placed;
      } else {
        acc += placed;
      }
      if (at(Tok::Plus) || at(Tok::Minus)) {
        negate = at(Tok::Minus);
        advance();
        continue;
      }
      break;
    }
    expect(Tok::End, "unexpected input");
    return acc;
  }

 private:
  static constexpr unsigned kMaxDepth = 200;

  const Token& peek() const { return tokens_[index_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& advance() { return tokens_[index_++]; }
  void expect(Tok k, const char* message) {
    if (!at(k)) throw ParseError(message, peek().pos);
    advance();
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) throw ParseError("expression nested too deeply", p.peek().pos);
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  OperatorVector one() const { return OperatorVector::scalar(ctx_.nvars, RationalFunction(ctx_.nvars, Scalar(1))); }

  std::size_t parseTag() {
    std::size_t open = peek().pos;
    advance();
    if (!at(Tok::Ident)) throw ParseError("expected unknown name like u1 in tag", peek().pos);
    const Token& t = advance();
    std::size_t component = 0;
    if (t.text == "u" && ctx_.ncomponents == 1) {
      component = 0;
    } else if (t.text.size() > 1 && t.text[0] == 'u' &&
               std::all_of(t.text.begin() + 1, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      std::size_t k = t.text.size() > 6 ? 0 : std::stoul(t.text.substr(1));
      if (k < 1 || k > ctx_.ncomponents) throw ParseError("unknown '" + t.text + "' out of range", t.pos);
      component = k - 1;
    } else {
      throw ParseError("unknown identifier '" + t.text + "' in tag", t.pos);
    }
    if (!at(Tok::RBracket)) throw ParseError("expected ']' to close tag opened", open);
    advance();
    return component;
  }

  OperatorVector parsePrefixedSum() {
    DepthGuard guard(*this);
    OperatorVector acc(ctx_.nvars, 1);
    bool negate = false;
    if (at(Tok::Plus)) advance();
    while (true) {
      OperatorVector t = parseTerm();
      if (at(Tok::LBracket)) throw ParseError("unknown tags are only allowed on top-level terms", peek().pos);
      if (negate) {
        acc -= t;
      } else {
        acc += t;
      }
      if (at(Tok::Plus) || at(Tok::Minus)) {
        negate = at(Tok::Minus);
        advance();
        continue;
      }
      return acc;
    }
  }

  OperatorVector parseTerm() {
    OperatorVector acc = parseUnary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      bool divide = at(Tok::Slash);
      advance();
      std::size_t pos = peek().pos;
      OperatorVector rhs = parseUnary();
      if (divide) {
        if (rhs.isZero()) throw ParseError("division by zero", pos);
        if (rhs.maxOrder() != 0) throw ParseError("divisor must not contain D", pos);
        RationalFunction f = rhs.terms().begin()->second;
        acc = scalarOperatorProduct(acc, OperatorVector::scalar(ctx_.nvars, f.inverse()));
      } else {
        acc = scalarOperatorProduct(acc, rhs);
      }
    }
    return acc;
  }

  OperatorVector parseUnary() {
    if (at(Tok::Minus)) {
      DepthGuard guard(*this);
      advance();
      return -parseUnary();
    }
    return parsePower();
  }

  OperatorVector parsePower() {
    OperatorVector base = parsePrimary();
    if (!at(Tok::Caret)) return base;
    advance();
    if (at(Tok::Minus)) throw ParseError("nonpositive exponent", peek().pos);
    if (!at(Tok::Integer)) throw ParseError("expected integer exponent", peek().pos);
    const Token& t = advance();
    mpz_class e(t.text, 10);
    if (e == 0) throw ParseError("nonpositive exponent", t.pos);
    if (e > kMaxExponent) throw ParseError("exponent larger than " + std::to_string(kMaxExponent), t.pos);
    unsigned k = static_cast<unsigned>(e.get_ui());
    OperatorVector r = base;
    for (unsigned j = 1; j < k; ++j) r = scalarOperatorProduct(r, base);
    return r;
  }

  OperatorVector parsePrimary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Integer: {
        advance();
        mpq_class v(mpz_class(t.text, 10));
        return OperatorVector::scalar(ctx_.nvars, RationalFunction(ctx_.nvars, Scalar(v)));
      }
      case Tok::Ident:
        advance();
        return identifier(t);
      case Tok::LParen: {
        DepthGuard guard(*this);
        std::size_t open = t.pos;
        advance();
        OperatorVector inner = parsePrefixedSum();
        if (!at(Tok::RParen)) throw ParseError("expected ')' to match '(' at " + std::to_string(open), peek().pos);
        advance();
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  OperatorVector identifier(const Token& t) {
    const std::size_t m = ctx_.nvars;
    const std::string& s = t.text;
    auto variable = [&](std::size_t j) {
      return OperatorVector::scalar(m, RationalFunction(Polynomial::variable(m, j)));
    };
    auto derivation = [&](std::size_t j) {
      return OperatorVector::scalarMonomial(MultiIndex::unit(m, j), RationalFunction(m, Scalar(1)));
    };
    auto indexSuffix = [&](std::size_t from) -> std::size_t {
      if (s.size() <= from || s.size() > from + 6) return 0;
      for (std::size_t k = from; k < s.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return 0;
      }
      return std::stoul(s.substr(from));
    };
    if (s == "i") {
      if (ctx_.field != FieldMode::Complex) throw ParseError("imaginary unit 'i' needs the complex field", t.pos);
      return OperatorVector::scalar(m, RationalFunction(m, Scalar::imaginaryUnit()));
    }
    if (m <= 3) {
      static const std::string letters[] = {"x", "y", "z"};
      for (std::size_t j = 0; j < m; ++j) {
        if (s == letters[j]) return variable(j);
      }
      static const std::string ds[] = {"Dx", "Dy", "Dz"};
      for (std::size_t j = 0; j < m; ++j) {
        if (s == ds[j]) return derivation(j);
      }
    }
    if (s == "D") return derivation(0);
    if (s[0] == 'x') {
      std::size_t k = indexSuffix(1);
      if (k >= 1 && k <= m) return variable(k - 1);
    }
    if (s[0] == 'D') {
      std::size_t k = indexSuffix(1);
      if (k >= 1 && k <= m) return derivation(k - 1);
    }
    throw ParseError("unknown identifier '" + s + "'", t.pos);
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  unsigned depth_ = 0;
  const ParseContext& ctx_;
};

std::vector<std::string> derivationNames(std::size_t m) {
  if (m == 1) return {"D"};
  std::vector<std::string> names;
  for (std::size_t j = 0; j < m; ++j) names.push_back("D" + std::to_string(j + 1));
  return names;
}

std::string monomialText(const MultiIndex& alpha) {
  auto names = derivationNames(alpha.size());
  std::string out;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[j];
    if (alpha[j] > 1) out += "^" + std::to_string(alpha[j]);
  }
  return out;
}

}  // namespace

OperatorVector parseOperator(std::string_view text, const ParseContext& ctx, std::size_t defaultComponent) {
  Parser parser(text, ctx);
  return parser.parseTopLevel(defaultComponent);
}

OperatorVector parseRow(std::string_view text, const ParseContext& ctx) {
  std::vector<std::pair<std::string_view, std::size_t>> parts;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    if (k == text.size() || text[k] == ';') {
      parts.emplace_back(text.substr(start, k - start), start);
      start = k + 1;
    }
  }
  if (parts.size() == 1) return parseOperator(text, ctx, 0);
  if (parts.size() != ctx.ncomponents)
    throw ParseError("row has " + std::to_string(parts.size()) + " entries but there are " +
                         std::to_string(ctx.ncomponents) + " unknowns",
                     0);
  OperatorVector row(ctx.nvars, ctx.ncomponents);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    try {
      row += parseOperator(parts[k].first, ctx, k);
    } catch (const ParseError& e) {
      throw ParseError(std::string("in entry ") + std::to_string(k + 1) + ": " + e.what(), parts[k].second + e.position());
    }
  }
  return row;
}

Polynomial parsePolynomial(std::string_view text, const ParseContext& ctx) {
  ParseContext scalarCtx{ctx.nvars, 1, ctx.field};
  OperatorVector p = parseOperator(text, scalarCtx);
  if (p.isZero()) return Polynomial(ctx.nvars);
  if (p.maxOrder() != 0) throw ParseError("expected a polynomial without D", 0);
  const RationalFunction& f = p.terms().begin()->second;
  if (!f.isPolynomial()) throw ParseError("expected a polynomial, got a rational function", 0);
  return f.numerator();
}

Scalar parseConstant(std::string_view text, const ParseContext& ctx) {
  Polynomial p = parsePolynomial(text, ctx);
  if (!p.isConstant()) throw ParseError("expected a constant", 0);
  return p.constantValue();
}

Derivative parseDerivative(std::string_view text, const ParseContext& ctx) {
  OperatorVector p = parseOperator(text, ctx);
  if (p.terms().size() != 1 || !p.terms().begin()->second.isOne())
    throw ParseError("expected a single derivative such as D^2 or 1", 0);
  return p.terms().begin()->first;
}

std::string formatRationalFunction(const RationalFunction& r) {
  if (r.isPolynomial()) return r.numerator().str();
  std::string num = r.numerator().str();
  if (r.numerator().terms().size() > 1) num = "(" + num + ")";
  std::string den = r.denominator().str();
  bool simpleDen = den.find_first_of(" *") == std::string::npos;
  if (!simpleDen) den = "(" + den + ")";
  return num + "/" + den;
}

std::string formatDerivative(const Derivative& d, std::size_t ncomponents) {
  std::string out = monomialText(d.alpha);
  if (out.empty()) out = "1";
  if (ncomponents > 1) out += " [u" + std::to_string(d.component + 1) + "]";
  return out;
}

std::string formatOperator(const OperatorVector& p) {
  if (p.isZero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [d, coefficient] = *it;
    RationalFunction c = coefficient;
    // Pull a leading minus out of single-term numerators.
    bool negative = false;
    const auto& numTerms = c.numerator().terms();
    if (numTerms.size() == 1 && numTerms[0].coefficient.isNegativeReal()) {
      negative = true;
      c = -c;
    }
    std::string mono = monomialText(d.alpha);
    std::string coef;
    if (c.isConstant()) {
      Scalar v = c.numerator().constantValue();
      coef = v.isReal() ? v.str() : "(" + v.str() + ")";
      if (v.isOne() && !mono.empty()) coef.clear();
    } else {
      coef = "(" + formatRationalFunction(c) + ")";
    }
    std::string term;
    if (coef.empty()) {
      term = mono;
    } else if (mono.empty()) {
      term = coef;
    } else {
      term = coef + "*" + mono;
    }
    if (p.ncomponents() > 1) term += " [u" + std::to_string(d.component + 1) + "]";
    if (first) {
      out += negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
    first = false;
  }
  return out;
}

}  // namespace weyl
