#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "bjorling/errors.hpp"
#include "bjorling/rational.hpp"

namespace bjorling {

using Complex = std::complex<double>;

inline constexpr double kRateMergeTol = 1e-12;

// One summand c * t^n * e^{k t}. When the rate is exactly i*(p/q) the term
// carries the rational tag; rate-zero terms are always tagged (0, 1).
struct PolyExpTerm {
  Complex coeff{0.0, 0.0};
  int power = 0;
  Complex rate{0.0, 0.0};
  std::optional<Rational> itag;
};

namespace detail {

inline std::optional<Rational> tag_for_rate(Complex rate) {
  if (rate == Complex(0.0, 0.0)) return Rational(0, 1);
  if (rate.real() != 0.0) return std::nullopt;
  return exact_rational(rate.imag());
}

inline std::optional<Rational> combine_tags(const std::optional<Rational>& a,
                                            const std::optional<Rational>& b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

}  // namespace detail

// Finite linear combination of t^n e^{kt}. Immutable after normalization;
// the zero function is the empty term list.
class PolyExp {
 public:
  PolyExp() = default;

  explicit PolyExp(std::vector<PolyExpTerm> terms) : terms_(std::move(terms)) { normalize(); }

  static PolyExp zero() { return PolyExp(); }

  static PolyExp constant(Complex c) {
    if (c == Complex(0.0, 0.0)) return PolyExp();
    return PolyExp({PolyExpTerm{c, 0, Complex(0.0, 0.0), Rational(0, 1)}});
  }

  static PolyExp variable() {  // t
    return PolyExp({PolyExpTerm{Complex(1.0, 0.0), 1, Complex(0.0, 0.0), Rational(0, 1)}});
  }

  static PolyExp term(Complex c, int n, Complex k) {
    return PolyExp({PolyExpTerm{c, n, k, detail::tag_for_rate(k)}});
  }

  // c * e^{i (p/q) t} with the exact tag attached.
  static PolyExp exp_imag(Complex c, Rational freq) {
    Complex k(0.0, freq.value());
    return PolyExp({PolyExpTerm{c, 0, k, freq}});
  }

  // cos(a t + b) = e^{ib}/2 e^{iat} + e^{-ib}/2 e^{-iat}; tagged when a is an
  // exact rational.
  static PolyExp cosw(double a, double b = 0.0) {
    Complex eib = std::polar(1.0, b);
    return euler_pair(0.5 * eib, 0.5 * std::conj(eib), a);
  }

  // sin(a t + b) = -i e^{ib}/2 e^{iat} + i e^{-ib}/2 e^{-iat}.
  static PolyExp sinw(double a, double b = 0.0) {
    Complex eib = std::polar(1.0, b);
    return euler_pair(Complex(0.0, -0.5) * eib, Complex(0.0, 0.5) * std::conj(eib), a);
  }

  const std::vector<PolyExpTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
  }

  // Drops terms with |coeff| <= eps. Used by validation and reporting paths,
  // never by the arithmetic itself.
  PolyExp pruned(double eps) const {
    std::vector<PolyExpTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
      if (std::abs(t.coeff) > eps) out.push_back(t);
    PolyExp p;
    p.terms_ = std::move(out);
    return p;
  }

  PolyExp operator-() const {
    PolyExp p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  friend PolyExp operator+(const PolyExp& a, const PolyExp& b) {
    std::vector<PolyExpTerm> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return PolyExp(std::move(terms));
  }

  friend PolyExp operator-(const PolyExp& a, const PolyExp& b) { return a + (-b); }

  friend PolyExp operator*(const PolyExp& a, const PolyExp& b) {
    std::vector<PolyExpTerm> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        PolyExpTerm t;
        t.coeff = ta.coeff * tb.coeff;
        t.power = ta.power + tb.power;
        t.itag = detail::combine_tags(ta.itag, tb.itag);
        t.rate = t.itag ? Complex(0.0, t.itag->value()) : ta.rate + tb.rate;
        terms.push_back(t);
      }
    return PolyExp(std::move(terms));
  }

  PolyExp scaled(Complex s) const {
    if (s == Complex(0.0, 0.0)) return PolyExp();
    PolyExp p = *this;
    for (auto& t : p.terms_) t.coeff *= s;
    return p;
  }

  friend PolyExp operator*(Complex s, const PolyExp& p) { return p.scaled(s); }
  friend PolyExp operator*(double s, const PolyExp& p) { return p.scaled(Complex(s, 0.0)); }

  // d/dt termwise: c t^n e^{kt} -> c n t^{n-1} e^{kt} + c k t^n e^{kt}.
  PolyExp derivative() const {
    std::vector<PolyExpTerm> terms;
    terms.reserve(2 * terms_.size());
    for (const auto& t : terms_) {
      if (t.power > 0)
        terms.push_back(PolyExpTerm{t.coeff * static_cast<double>(t.power), t.power - 1,
                                    t.rate, t.itag});
      if (t.rate != Complex(0.0, 0.0))
        terms.push_back(PolyExpTerm{t.coeff * t.rate, t.power, t.rate, t.itag});
    }
    return PolyExp(std::move(terms));
  }

  // Antiderivative F with F(t0) = 0. For k != 0,
  //   int t^n e^{kt} dt = e^{kt} sum_{j=0}^{n} (-1)^j n!/(n-j)! t^{n-j} / k^{j+1};
  // for k = 0 it is t^{n+1}/(n+1).
  PolyExp antiderivative(double t0) const {
    std::vector<PolyExpTerm> terms;
    for (const auto& t : terms_) {
      if (t.rate == Complex(0.0, 0.0)) {
        terms.push_back(PolyExpTerm{t.coeff / static_cast<double>(t.power + 1), t.power + 1,
                                    t.rate, t.itag});
      } else {
        Complex c = t.coeff / t.rate;
        int n = t.power;
        terms.push_back(PolyExpTerm{c, n, t.rate, t.itag});
        for (int j = 1; j <= n; ++j) {
          c = -c * static_cast<double>(n - j + 1) / t.rate;
          terms.push_back(PolyExpTerm{c, n - j, t.rate, t.itag});
        }
      }
    }
    PolyExp raw(std::move(terms));
    Complex at0 = raw.eval(Complex(t0, 0.0));
    return raw + PolyExp::constant(-at0);
  }

  // Principal-branch evaluation sum c z^n e^{kz}; reports overflow instead of
  // silently saturating.
  Complex eval(Complex z) const {
    Complex acc(0.0, 0.0);
    for (const auto& t : terms_) {
      double re_exp = t.rate.real() * z.real() - t.rate.imag() * z.imag();
      if (re_exp > 700.0)
        throw EvalOverflow("polyexp evaluation overflows: |e^{kz}| exceeds double range");
      Complex zp(1.0, 0.0);
      for (int i = 0; i < t.power; ++i) zp *= z;
      acc += t.coeff * zp * std::exp(t.rate * z);
    }
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
      throw EvalOverflow("polyexp evaluation produced a non-finite value");
    return acc;
  }

  double eval_real(double t) const { return eval(Complex(t, 0.0)).real(); }

  // True iff terms pair into conjugates: (c, n, k) matched by (conj c, n, conj k).
  // A 64-point imaginary-part sample on [-10, 10] runs as a guard; the
  // structural verdict is authoritative.
  bool real_on_axis(double tol) const {
    bool structural = structurally_real(tol);
    sampled_real(tol);  // guard only
    return structural;
  }

  bool structurally_real(double tol) const {
    std::vector<bool> used(terms_.size(), false);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (used[i]) continue;
      const auto& t = terms_[i];
      if (std::abs(t.rate.imag()) <= kRateMergeTol) {
        // real rate: coefficient must be real
        if (std::abs(t.coeff.imag()) > tol * (1.0 + std::abs(t.coeff))) return false;
        used[i] = true;
        continue;
      }
      bool found = false;
      for (std::size_t j = i + 1; j < terms_.size(); ++j) {
        if (used[j]) continue;
        const auto& s = terms_[j];
        if (s.power != t.power) continue;
        if (std::abs(s.rate - std::conj(t.rate)) > kRateMergeTol) continue;
        if (std::abs(s.coeff - std::conj(t.coeff)) > tol * (1.0 + std::abs(t.coeff)))
          return false;
        used[i] = used[j] = true;
        found = true;
        break;
      }
      if (!found) return false;
    }
    return true;
  }

  bool sampled_real(double tol) const {
    for (int i = 0; i < 64; ++i) {
      double t = -10.0 + 20.0 * i / 63.0;
      Complex v = eval(Complex(t, 0.0));
      if (std::abs(v.imag()) > tol * (1.0 + std::abs(v))) return false;
    }
    return true;
  }

  friend bool operator==(const PolyExp& a, const PolyExp& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      const auto& ta = a.terms_[i];
      const auto& tb = b.terms_[i];
      if (ta.power != tb.power || ta.coeff != tb.coeff || ta.rate != tb.rate) return false;
    }
    return true;
  }

 private:
  static PolyExp euler_pair(Complex cplus, Complex cminus, double a) {
    auto tag = exact_rational(a);
    std::vector<PolyExpTerm> terms;
    terms.push_back(PolyExpTerm{cplus, 0, Complex(0.0, a), tag});
    terms.push_back(PolyExpTerm{cminus, 0, Complex(0.0, -a),
                                tag ? std::optional<Rational>(-*tag) : std::nullopt});
    return PolyExp(std::move(terms));
  }

  // Canonical form: tags canonicalize rates, terms sorted by
  // (power, rate.re, rate.im), equal keys merged (rates compared with absolute
  // tolerance), exact-zero coefficients dropped.
  void normalize() {
    for (auto& t : terms_) {
      if (!t.itag && t.rate == Complex(0.0, 0.0)) t.itag = Rational(0, 1);
      if (t.itag) t.rate = Complex(0.0, t.itag->value());
    }
    std::sort(terms_.begin(), terms_.end(), [](const PolyExpTerm& a, const PolyExpTerm& b) {
      if (a.power != b.power) return a.power < b.power;
      if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
      return a.rate.imag() < b.rate.imag();
    });
    std::vector<PolyExpTerm> merged;
    for (const auto& t : terms_) {
      if (!merged.empty() && merged.back().power == t.power &&
          std::abs(merged.back().rate - t.rate) <= kRateMergeTol) {
        merged.back().coeff += t.coeff;
        if (!merged.back().itag && t.itag) {
          merged.back().itag = t.itag;
          merged.back().rate = t.rate;
        }
      } else {
        merged.push_back(t);
      }
    }
    terms_.clear();
    for (const auto& t : merged)
      if (t.coeff != Complex(0.0, 0.0)) terms_.push_back(t);
  }

  std::vector<PolyExpTerm> terms_;
};

// Residual check used by the symbolic identities: zero after normalization up
// to coefficient noise proportional to `scale` (exactly empty for dyadic
// coefficient sets).
inline bool effectively_zero(const PolyExp& p, double scale, double rel = 1e-12) {
  return p.max_abs_coeff() <= rel * std::max(1.0, scale);
}

struct PolyExpVec3 {
  PolyExp x, y, z;

  PolyExpVec3 operator+(const PolyExpVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  PolyExpVec3 operator-(const PolyExpVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  PolyExpVec3 scaled(Complex s) const { return {x.scaled(s), y.scaled(s), z.scaled(s)}; }
  PolyExpVec3 scaled(const PolyExp& s) const { return {s * x, s * y, s * z}; }

  PolyExp dot(const PolyExpVec3& o) const { return x * o.x + y * o.y + z * o.z; }
  PolyExp norm2() const { return dot(*this); }

  PolyExpVec3 derivative() const { return {x.derivative(), y.derivative(), z.derivative()}; }
  PolyExpVec3 antiderivative(double t0) const {
    return {x.antiderivative(t0), y.antiderivative(t0), z.antiderivative(t0)};
  }

  std::array<Complex, 3> eval(Complex zz) const { return {x.eval(zz), y.eval(zz), z.eval(zz)}; }

  bool real_on_axis(double tol) const {
    return x.real_on_axis(tol) && y.real_on_axis(tol) && z.real_on_axis(tol);
  }

  double max_abs_coeff() const {
    return std::max({x.max_abs_coeff(), y.max_abs_coeff(), z.max_abs_coeff()});
  }
};

// Plain numeric 3-vector for evaluated geometry.
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

}  // namespace bjorling
