#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "bjorling/polyexp.hpp"

namespace bjorling {

// Polynomial in w and 1/w; no zero coefficients stored, empty map is zero.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(Complex c, int k) {
    LaurentPoly p;
    p.add(k, c);
    return p;
  }

  void add(int k, Complex c) {
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
      if (c != Complex(0.0, 0.0)) coeffs_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) coeffs_.erase(it);
  }

  const std::map<int, Complex>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int min_exp() const { return coeffs_.begin()->first; }
  int max_exp() const { return coeffs_.rbegin()->first; }

  Complex coeff(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  LaurentPoly pruned(double rel = 1e-12) const {
    double cut = rel * max_abs_coeff();
    LaurentPoly out;
    for (const auto& [k, c] : coeffs_)
      if (std::abs(c) > cut) out.coeffs_.emplace(k, c);
    return out;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [k, c] : b.coeffs_) out.add(k, c);
    return out;
  }

  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [k, c] : b.coeffs_) out.add(k, -c);
    return out;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ka, ca] : a.coeffs_)
      for (const auto& [kb, cb] : b.coeffs_) out.add(ka + kb, ca * cb);
    return out;
  }

  LaurentPoly scaled(Complex s) const {
    LaurentPoly out;
    if (s == Complex(0.0, 0.0)) return out;
    for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k, c * s);
    return out;
  }

  LaurentPoly shifted(int dk) const {
    LaurentPoly out;
    for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k + dk, c);
    return out;
  }

  Complex eval(Complex w) const {
    Complex acc(0.0, 0.0);
    for (const auto& [k, c] : coeffs_) acc += c * std::pow(w, k);
    return acc;
  }

 private:
  std::map<int, Complex> coeffs_;
};

// Dense coefficients c[0..n] with c[0] != 0 after clearing the monomial
// factor w^shift. Tiny relative coefficients are pruned first so symbolic
// cancellations that leave float dust do not inflate degrees.
struct ClearedPoly {
  std::vector<Complex> coeffs;  // ascending powers; front and back nonzero
  int shift = 0;
};

inline ClearedPoly clear_monomial(const LaurentPoly& p, double rel = 1e-12) {
  LaurentPoly q = p.pruned(rel);
  ClearedPoly out;
  if (q.is_zero()) return out;
  out.shift = q.min_exp();
  out.coeffs.assign(q.max_exp() - q.min_exp() + 1, Complex(0.0, 0.0));
  for (const auto& [k, c] : q.coeffs()) out.coeffs[k - out.shift] = c;
  return out;
}

inline int poly_degree(const ClearedPoly& p) {
  return p.coeffs.empty() ? -1 : static_cast<int>(p.coeffs.size()) - 1;
}

// Companion-matrix roots of c[0] + c[1] w + ... + c[n] w^n.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  Complex lead = coeffs[n];
  for (int i = 0; i < n; ++i) {
    companion(i, n - 1) = -coeffs[i] / lead;
    if (i > 0) companion(i, i - 1) = Complex(1.0, 0.0);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = solver.eigenvalues()(i);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

inline std::vector<Complex> poly_roots(const ClearedPoly& p) { return poly_roots(p.coeffs); }

// Determinant of the Sylvester matrix via partial-pivot elimination in
// complex doubles.
inline Complex resultant_dense(const std::vector<Complex>& p, const std::vector<Complex>& q) {
  int m = static_cast<int>(p.size()) - 1;
  int n = static_cast<int>(q.size()) - 1;
  if (m < 0 || n < 0) return Complex(0.0, 0.0);
  if (m == 0 && n == 0) return Complex(1.0, 0.0);
  if (m == 0) {
    Complex acc(1.0, 0.0);
    for (int i = 0; i < n; ++i) acc *= p[0];
    return acc;
  }
  if (n == 0) {
    Complex acc(1.0, 0.0);
    for (int i = 0; i < m; ++i) acc *= q[0];
    return acc;
  }

  int size = m + n;
  std::vector<std::vector<Complex>> a(size, std::vector<Complex>(size, Complex(0.0, 0.0)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) a[r][r + (m - k)] = p[k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) a[n + r][r + (n - k)] = q[k];

  Complex det(1.0, 0.0);
  for (int col = 0; col < size; ++col) {
    int pivot = col;
    for (int r = col + 1; r < size; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) == 0.0) return Complex(0.0, 0.0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < size; ++r) {
      Complex f = a[r][col] / a[col][col];
      if (f == Complex(0.0, 0.0)) continue;
      for (int cc = col; cc < size; ++cc) a[r][cc] -= f * a[col][cc];
    }
  }
  return det;
}

inline Complex resultant(const LaurentPoly& p, const LaurentPoly& q) {
  ClearedPoly cp = clear_monomial(p);
  ClearedPoly cq = clear_monomial(q);
  return resultant_dense(cp.coeffs, cq.coeffs);
}

// Resultant of the monic normalizations, i.e. the product of all root
// differences. Invariant under scaling of either polynomial.
inline Complex resultant_monic(const LaurentPoly& p, const LaurentPoly& q) {
  ClearedPoly cp = clear_monomial(p);
  ClearedPoly cq = clear_monomial(q);
  if (cp.coeffs.empty() || cq.coeffs.empty()) return Complex(0.0, 0.0);
  Complex lp = cp.coeffs.back(), lq = cq.coeffs.back();
  for (auto& c : cp.coeffs) c /= lp;
  for (auto& c : cq.coeffs) c /= lq;
  return resultant_dense(cp.coeffs, cq.coeffs);
}

// Synthetic division of a dense polynomial by (w - root); remainder dropped.
inline std::vector<Complex> deflate(const std::vector<Complex>& coeffs, Complex root) {
  int n = static_cast<int>(coeffs.size()) - 1;
  std::vector<Complex> out(n);
  Complex carry = coeffs[n];
  for (int k = n - 1; k >= 0; --k) {
    out[k] = carry;
    carry = coeffs[k] + carry * root;
  }
  return out;
}

struct RationalMap {
  LaurentPoly num;
  LaurentPoly den;  // never the zero polynomial

  Complex eval(Complex w) const { return num.eval(w) / den.eval(w); }
};

}  // namespace bjorling
