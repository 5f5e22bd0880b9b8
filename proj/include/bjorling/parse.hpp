#pragma once

// Expression grammar for polyexp input and the round-trip pretty-printer.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*     division only by constants
//   factor := ('-'|'+')* power
//   power  := atom ('^' nonneg-integer)?
//   atom   := number | 'pi' | 'e' | 'i' | 't' | fn '(' expr ')' | '(' expr ')'
//   fn     := exp | sin | cos | sinh | cosh    argument must be a*t + b

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "bjorling/polyexp.hpp"

namespace bjorling {

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PolyExp parse() {
    PolyExp result = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("end of input");
    return result;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected) {
    std::string got = pos_ < text_.size() ? std::string(1, text_[pos_]) : "end of input";
    throw SyntaxError(pos_, expected, got);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  PolyExp expr() {
    PolyExp acc = term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  PolyExp term() {
    PolyExp acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        std::size_t at = pos_;
        PolyExp den = factor();
        Complex c;
        if (!as_constant(den, c))
          throw DivisionByNonConstant("division by a non-constant subexpression at position " +
                                      std::to_string(at));
        if (c == Complex(0.0, 0.0))
          throw DivisionByNonConstant("division by zero at position " + std::to_string(at));
        acc = acc.scaled(Complex(1.0, 0.0) / c);
      } else {
        return acc;
      }
    }
  }

  PolyExp factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    return power();
  }

  PolyExp power() {
    PolyExp base = atom();
    if (eat('^')) {
      skip_ws();
      bool neg = false;
      if (pos_ < text_.size() && text_[pos_] == '-') neg = true;
      std::size_t start = pos_ + (neg ? 1 : 0);
      std::size_t end = start;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      if (end == start) fail("integer exponent");
      if (neg)
        throw UnsupportedExpression("negative exponent at position " + std::to_string(pos_));
      int n = 0;
      std::from_chars(text_.data() + start, text_.data() + end, n);
      pos_ = end;
      PolyExp acc = PolyExp::constant(Complex(1.0, 0.0));
      for (int i = 0; i < n; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }

  PolyExp atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("number, constant, 't', function or '('");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      PolyExp e = expr();
      if (!eat(')')) fail("')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
      std::string name(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (name == "t") return PolyExp::variable();
      if (name == "pi") return PolyExp::constant(Complex(M_PI, 0.0));
      if (name == "e") return PolyExp::constant(Complex(M_E, 0.0));
      if (name == "i") return PolyExp::constant(Complex(0.0, 1.0));
      if (name == "exp" || name == "sin" || name == "cos" || name == "sinh" || name == "cosh")
        return function(name);
      throw SyntaxError(pos_ - name.size(), "known identifier", name);
    }
    fail("number, constant, 't', function or '('");
  }

  PolyExp number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) fail("numeric literal");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return PolyExp::constant(Complex(value, 0.0));
  }

  static bool as_constant(const PolyExp& p, Complex& out) {
    if (p.is_zero()) {
      out = Complex(0.0, 0.0);
      return true;
    }
    if (p.terms().size() != 1) return false;
    const auto& t = p.terms()[0];
    if (t.power != 0 || t.rate != Complex(0.0, 0.0)) return false;
    out = t.coeff;
    return true;
  }

  // fn(a*t + b): a and b constants, a possibly complex; non-linear arguments
  // are outside the function class.
  PolyExp function(const std::string& name) {
    if (!eat('(')) fail("'('");
    PolyExp arg = expr();
    if (!eat(')')) fail("')'");

    Complex a(0.0, 0.0), b(0.0, 0.0);
    for (const auto& t : arg.terms()) {
      if (t.rate != Complex(0.0, 0.0) || t.power > 1)
        throw UnsupportedExpression("argument of " + name +
                                    " must be linear in t: a*t + b with constant a, b");
      if (t.power == 0)
        b = t.coeff;
      else
        a = t.coeff;
    }

    if (name == "exp") {
      // e^{b} e^{a t}
      PolyExpTerm t;
      t.coeff = std::exp(b);
      t.power = 0;
      t.rate = a;
      t.itag = detail_tag(a);
      return PolyExp({t});
    }
    Complex ia = Complex(0.0, 1.0) * a;
    Complex eib = std::exp(Complex(0.0, 1.0) * b);
    if (name == "sin" || name == "cos") {
      PolyExpTerm plus, minus;
      plus.rate = ia;
      minus.rate = -ia;
      plus.itag = detail_tag(ia);
      minus.itag = detail_tag(-ia);
      if (name == "cos") {
        plus.coeff = 0.5 * eib;
        minus.coeff = 0.5 / eib;
      } else {
        plus.coeff = Complex(0.0, -0.5) * eib;
        minus.coeff = Complex(0.0, 0.5) / eib;
      }
      return PolyExp({plus, minus});
    }
    // sinh / cosh
    Complex eb = std::exp(b);
    PolyExpTerm plus, minus;
    plus.rate = a;
    minus.rate = -a;
    plus.itag = detail_tag(a);
    minus.itag = detail_tag(-a);
    double sign = (name == "sinh") ? -1.0 : 1.0;
    plus.coeff = 0.5 * eb;
    minus.coeff = Complex(0.5 * sign, 0.0) / eb;
    return PolyExp({plus, minus});
  }

  static std::optional<Rational> detail_tag(Complex rate) { return detail::tag_for_rate(rate); }
};

inline void append_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  out.append(buf, ptr);
}

inline bool needs_parens(double v) { return v < 0.0; }

inline void append_number(std::string& out, double v, bool parens_if_negative) {
  if (parens_if_negative && needs_parens(v)) {
    out += '(';
    append_double(out, v);
    out += ')';
  } else {
    append_double(out, v);
  }
}

// coefficient as "(re+im*i)" (or simpler when purely real/imaginary)
inline void append_complex(std::string& out, Complex c) {
  if (c.imag() == 0.0) {
    append_number(out, c.real(), true);
    return;
  }
  out += '(';
  if (c.real() != 0.0) {
    append_double(out, c.real());
    if (c.imag() >= 0.0) out += '+';
  }
  if (c.imag() == 1.0)
    out += "i";
  else if (c.imag() == -1.0)
    out += "-i";
  else {
    append_double(out, c.imag());
    out += "*i";
  }
  out += ')';
}

inline void append_monomial(std::string& out, int power, Complex rate) {
  if (power > 0) {
    out += "t";
    if (power > 1) {
      out += '^';
      out += std::to_string(power);
    }
  }
  if (rate != Complex(0.0, 0.0)) {
    if (power > 0) out += '*';
    out += "exp(";
    if (rate.imag() == 0.0) {
      append_number(out, rate.real(), true);
    } else {
      append_complex(out, rate);
    }
    out += "*t)";
  }
}

inline void append_trig(std::string& out, double amp, const char* fn, double w) {
  if (amp != 1.0) {
    append_number(out, amp, true);
    out += '*';
  }
  out += fn;
  out += '(';
  if (w != 1.0) {
    append_number(out, w, true);
    out += "*t)";
  } else {
    out += "t)";
  }
}

}  // namespace detail

inline PolyExp pe_parse(std::string_view text) { return detail::Parser(text).parse(); }

// Round-trip printer. Conjugate pairs with nonreal rates print in mixed
// trig/exp form, everything else as raw exponentials.
inline std::string pe_to_string(const PolyExp& p) {
  if (p.is_zero()) return "0";

  const auto& terms = p.terms();
  std::vector<bool> used(terms.size(), false);
  std::string out;
  bool first = true;

  auto begin_term = [&](bool negative) {
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
  };

  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (used[i]) continue;
    const auto& t = terms[i];
    used[i] = true;

    // look for the conjugate partner of an oscillatory term
    if (std::abs(t.rate.imag()) > kRateMergeTol) {
      std::size_t j = i + 1;
      for (; j < terms.size(); ++j) {
        if (used[j]) continue;
        if (terms[j].power == t.power &&
            std::abs(terms[j].rate - std::conj(t.rate)) <= kRateMergeTol &&
            std::abs(terms[j].coeff - std::conj(t.coeff)) <=
                1e-14 * (1.0 + std::abs(t.coeff)))
          break;
      }
      if (j < terms.size()) {
        used[j] = true;
        // c e^{iwt} + conj pair = A cos(wt) + B sin(wt), times t^n e^{rho t};
        // amplitudes read off the positive-frequency member
        Complex cplus = t.rate.imag() > 0.0 ? t.coeff : terms[j].coeff;
        double A = 2.0 * cplus.real();
        double B = -2.0 * cplus.imag();
        double w = std::abs(t.rate.imag());
        double rho = t.rate.real();
        begin_term(false);
        if (t.power > 0 || rho != 0.0) {
          detail::append_monomial(out, t.power, Complex(rho, 0.0));
          out += '*';
        }
        out += '(';
        bool wrote = false;
        if (A != 0.0) {
          detail::append_trig(out, A, "cos", w);
          wrote = true;
        }
        if (B != 0.0) {
          if (wrote) out += (B > 0.0 ? " + " : " - ");
          double mag = wrote ? std::abs(B) : B;
          detail::append_trig(out, mag, "sin", w);
        }
        if (!wrote && B == 0.0) out += '0';
        out += ')';
        continue;
      }
    }

    // raw term
    bool negative = t.coeff.imag() == 0.0 && t.coeff.real() < 0.0;
    begin_term(negative);
    Complex c = negative ? -t.coeff : t.coeff;
    bool unit = (c == Complex(1.0, 0.0));
    bool has_monomial = t.power > 0 || t.rate != Complex(0.0, 0.0);
    if (!unit || !has_monomial) detail::append_complex(out, c);
    if (has_monomial) {
      if (!unit) out += '*';
      detail::append_monomial(out, t.power, t.rate);
    }
  }
  return out;
}

}  // namespace bjorling
