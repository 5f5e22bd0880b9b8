#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "bjorling/surface.hpp"

namespace bjorling {

// Gauss-Legendre nodes/weights on [-1, 1]; Newton iteration on P_n, cached
// per order.
inline const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<double, double>> nw(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nw[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return cache.emplace(n, std::move(nw)).first->second;
}

// Composite Gauss-Legendre along the straight segment [a, b] in C.
template <class F>
Complex integrate_segment(F&& f, Complex a, Complex b, int order, int panels) {
  const auto& nw = gauss_legendre(order);
  Complex total(0.0, 0.0);
  for (int p = 0; p < panels; ++p) {
    Complex pa = a + (b - a) * (static_cast<double>(p) / panels);
    Complex pb = a + (b - a) * (static_cast<double>(p + 1) / panels);
    Complex mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
    Complex acc(0.0, 0.0);
    for (const auto& [x, w] : nw) acc += w * f(mid + half * x);
    total += acc * half;
  }
  return total;
}

struct QuadratureSpec {
  int order = 16;   // >= 4
  int panels = 8;   // >= 1
};

struct QuadratureResult {
  Vec3 position;
  double path_residual;  // straight segment vs axis-then-vertical path
};

// Direct numeric evaluation of X(z) = Re(c(z) - i int_{t0}^{z} g(w) dw); the
// independent oracle for the closed-form surfaces. Integrates along the
// straight segment and the L-shaped path and reports their difference.
inline QuadratureResult bjorling_quadrature(const PolyExpVec3& c, const PolyExpVec3& integrand,
                                            double t0, Complex z, const QuadratureSpec& spec) {
  auto straight = [&](const PolyExp& g) {
    return integrate_segment([&](Complex w) { return g.eval(w); }, Complex(t0, 0.0), z,
                             spec.order, spec.panels);
  };
  auto lshaped = [&](const PolyExp& g) {
    Complex corner(z.real(), 0.0);
    Complex leg1 = integrate_segment([&](Complex w) { return g.eval(w); }, Complex(t0, 0.0),
                                     corner, spec.order, spec.panels);
    Complex leg2 = integrate_segment([&](Complex w) { return g.eval(w); }, corner, z,
                                     spec.order, spec.panels);
    return leg1 + leg2;
  };

  const PolyExp* comps[3] = {&integrand.x, &integrand.y, &integrand.z};
  auto cz = c.eval(z);
  Vec3 pos, pos_l;
  double* out[3] = {&pos.x, &pos.y, &pos.z};
  double* out_l[3] = {&pos_l.x, &pos_l.y, &pos_l.z};
  for (int i = 0; i < 3; ++i) {
    Complex is = straight(*comps[i]);
    Complex il = lshaped(*comps[i]);
    *out[i] = (cz[i] - Complex(0.0, 1.0) * is).real();
    *out_l[i] = (cz[i] - Complex(0.0, 1.0) * il).real();
  }
  double residual = std::max({std::abs(pos.x - pos_l.x), std::abs(pos.y - pos_l.y),
                              std::abs(pos.z - pos_l.z)});
  return {pos, residual};
}

// |H| * |X_u| from central differences of position only (first and second
// fundamental forms); scale-invariant mean-curvature residual.
inline double mean_curvature_numeric(const SurfaceEvaluator& surface, Complex z, double h) {
  if (!(h >= 1e-5 && h <= 1e-2)) throw Error("step size must lie in [1e-5, 1e-2]");
  auto pos = [&](Complex w) { return surface.at(w).position; };

  Complex ih(0.0, h);
  Vec3 xc = pos(z);
  Vec3 xpu = pos(z + h), xmu = pos(z - h);
  Vec3 xpv = pos(z + ih), xmv = pos(z - ih);

  Vec3 xu = (xpu - xmu) * (0.5 / h);
  Vec3 xv = (xpv - xmv) * (0.5 / h);
  Vec3 xuu = (xpu - xc * 2.0 + xmu) * (1.0 / (h * h));
  Vec3 xvv = (xpv - xc * 2.0 + xmv) * (1.0 / (h * h));
  Vec3 xuv = (pos(z + h + ih) - pos(z + h - ih) - pos(z - h + ih) + pos(z - h - ih)) *
             (0.25 / (h * h));

  double E = xu.dot(xu), F = xu.dot(xv), G = xv.dot(xv);
  Vec3 n = xu.cross(xv);
  double nn = n.norm();
  double denom = E * G - F * F;
  if (nn <= 1e-12 * std::max(1.0, E + G) || denom <= 0.0)
    throw SingularPointError("mean curvature undefined at a singular point");
  n = n * (1.0 / nn);

  double e = n.dot(xuu), f = n.dot(xuv), g = n.dot(xvv);
  double H = (e * G - 2.0 * f * F + g * E) / (2.0 * denom);
  return std::abs(H) * std::sqrt(E);
}

// Fresnel integrals C(z) = int_0^z cos(s^2) ds, S(z) = int_0^z sin(s^2) ds.
// Power series to machine stagnation for |z| <= 4, composite quadrature up
// to |z| <= 8.
inline std::pair<Complex, Complex> fresnel(Complex z) {
  double r = std::abs(z);
  if (r > 8.0) throw DomainTooLarge("Fresnel evaluation limited to |z| <= 8");

  if (r <= 4.0) {
    Complex z2 = z * z;
    Complex z4 = z2 * z2;
    // C: sum (-1)^m z^{4m+1} / ((2m)! (4m+1)); S: sum (-1)^m z^{4m+3} / ((2m+1)! (4m+3))
    Complex c_acc = z;
    Complex s_acc = z * z2 / 3.0;
    Complex c_pow = z, s_pow = z * z2;
    double c_fact = 1.0, s_fact = 1.0;
    for (int m = 1; m < 200; ++m) {
      c_pow *= z4;
      s_pow *= z4;
      c_fact *= (2.0 * m - 1.0) * (2.0 * m);
      s_fact *= (2.0 * m) * (2.0 * m + 1.0);
      double sign = (m % 2 == 0) ? 1.0 : -1.0;
      Complex dc = sign * c_pow / (c_fact * (4.0 * m + 1.0));
      Complex ds = sign * s_pow / (s_fact * (4.0 * m + 3.0));
      c_acc += dc;
      s_acc += ds;
      if (std::abs(dc) < 1e-18 * (1.0 + std::abs(c_acc)) &&
          std::abs(ds) < 1e-18 * (1.0 + std::abs(s_acc)))
        break;
    }
    return {c_acc, s_acc};
  }

  Complex c = integrate_segment([](Complex s) { return std::cos(s * s); }, Complex(0.0, 0.0),
                                z, 24, 24);
  Complex s = integrate_segment([](Complex s_) { return std::sin(s_ * s_); }, Complex(0.0, 0.0),
                                z, 24, 24);
  return {c, s};
}

}  // namespace bjorling
