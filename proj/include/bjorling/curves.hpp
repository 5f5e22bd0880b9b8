#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "bjorling/frames.hpp"
#include "bjorling/surface.hpp"
#include "bjorling/verify.hpp"

namespace bjorling {

struct PlaneCurveSpec {
  std::string name;
  std::map<std::string, double> params;
  PolyExp x, y;    // positions
  PolyExp xp, yp;  // exact derivatives of x, y
  double t0 = 0.0, t1 = 2.0 * M_PI;
  // The lifted height printed for this curve, as a function of lambda, or
  // empty when no closed form is recorded. Anchored like the source: may
  // differ from the z(0) = 0 lift by a constant.
  std::function<PolyExp(double)> golden_z;
  std::string notes;
};

namespace detail {

inline double require_param(const std::map<std::string, double>& params, const std::string& key,
                            const std::string& curve) {
  auto it = params.find(key);
  if (it == params.end()) throw MissingParam("curve '" + curve + "' requires parameter " + key);
  return it->second;
}

inline double param_or(const std::map<std::string, double>& params, const std::string& key,
                       double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

inline PolyExp linear_t(double c) {  // c * t
  return PolyExp::variable().scaled(Complex(c, 0.0));
}

inline PolyExp real_exp(double c, double rate) {  // c * e^{rate t}
  return PolyExp::term(Complex(c, 0.0), 0, Complex(rate, 0.0));
}

}  // namespace detail

// Plane-curve catalog. Derivatives are exact (xp = x.derivative()), and
// golden_z carries the recorded closed-form lift heights.
inline PlaneCurveSpec catalog_plane(const std::string& name,
                                    const std::map<std::string, double>& params = {}) {
  using detail::linear_t;
  using detail::param_or;
  using detail::real_exp;
  using detail::require_param;

  PlaneCurveSpec spec;
  spec.name = name;
  spec.params = params;

  if (name == "circle") {
    spec.x = PolyExp::cosw(1.0);
    spec.y = PolyExp::sinw(1.0);
    spec.golden_z = [](double lam) {
      return linear_t((lam * lam - 1.0) / (2.0 * lam));
    };
  } else if (name == "ellipse") {
    double p = param_or(params, "p", 1.0);
    double q = param_or(params, "q", 3.0);
    spec.x = p * PolyExp::cosw(1.0);
    spec.y = q * PolyExp::sinw(1.0);
    if (p == 1.0 && q == 3.0) {
      spec.golden_z = [](double lam) {
        double s = 1.0 / (2.0 * lam);
        return linear_t(s * (lam * lam - 5.0)) - (2.0 * s) * PolyExp::sinw(2.0);
      };
    }
  } else if (name == "lissajous") {
    double xi = require_param(params, "xi", name);
    double eta = require_param(params, "eta", name);
    spec.x = PolyExp::cosw(xi);
    spec.y = PolyExp::sinw(eta);
    spec.golden_z = [xi, eta](double lam) {
      double s = 1.0 / (8.0 * lam);
      return linear_t(-2.0 * s * (xi * xi + eta * eta - 2.0 * lam * lam)) +
             (s * xi) * PolyExp::sinw(2.0 * xi) - (s * eta) * PolyExp::sinw(2.0 * eta);
    };
  } else if (name == "cycloid") {
    double R = require_param(params, "R", name);
    double r = require_param(params, "r", name);
    double s = require_param(params, "s", name);
    double m = 1.0 + R / r;
    spec.x = (R + r) * PolyExp::cosw(1.0) - s * PolyExp::cosw(m);
    spec.y = (R + r) * PolyExp::sinw(1.0) - s * PolyExp::sinw(m);
    if (R == 2.0 && r == 1.0 && s == 2.0) {
      // (3 cos t - 2 cos 3t, 3 sin t - 2 sin 3t)
      spec.golden_z = [](double lam) {
        double k = 1.0 / (2.0 * lam);
        return linear_t(k * (lam * lam - 45.0)) + (18.0 * k) * PolyExp::sinw(2.0);
      };
    }
  } else if (name == "deltoid") {
    // (-2 cos t - cos 2t, sin 2t - 2 sin t); the (R, r, s) = (-3, 1, 1) cycloid
    spec.x = (-2.0) * PolyExp::cosw(1.0) - PolyExp::cosw(2.0);
    spec.y = PolyExp::sinw(2.0) - 2.0 * PolyExp::sinw(1.0);
    spec.golden_z = [](double lam) {
      double k = 1.0 / (6.0 * lam);
      return linear_t(3.0 * k * (lam * lam - 8.0)) + (8.0 * k) * PolyExp::sinw(3.0);
    };
  } else if (name == "trefoil") {
    double xi = require_param(params, "xi", name);
    // ((cos t - xi) cos t, (cos t + xi) sin t)
    spec.x = (PolyExp::cosw(1.0) - PolyExp::constant(Complex(xi, 0.0))) * PolyExp::cosw(1.0);
    spec.y = (PolyExp::cosw(1.0) + PolyExp::constant(Complex(xi, 0.0))) * PolyExp::sinw(1.0);
    // Recorded height; equals the lift taken with -lambda (the printed form
    // integrates the mirrored frame).
    spec.golden_z = [xi](double lam) {
      double k = 1.0 / (6.0 * lam);
      return linear_t(3.0 * k * (xi * xi + 1.0 - lam * lam)) +
             (2.0 * xi * k) * PolyExp::sinw(3.0);
    };
    if (xi > 0.0 && xi < 0.5) spec.notes = "lift is knotted";
  } else if (name == "log_spiral") {
    double rho = require_param(params, "rho", name);
    if (!(rho > 0.0) || rho == 1.0) throw InvalidLambda("log_spiral requires rho > 0, rho != 1");
    double lr = std::log(rho);
    // rho^t (cos t, sin t)
    spec.x = real_exp(1.0, lr) * PolyExp::cosw(1.0);
    spec.y = real_exp(1.0, lr) * PolyExp::sinw(1.0);
    spec.t0 = -6.0;
    spec.t1 = 6.0;
    spec.golden_z = [lr](double lam) {
      return linear_t(0.5 * lam) - real_exp((lr * lr + 1.0) / (4.0 * lam * lr), 2.0 * lr);
    };
  } else if (name == "archimedean") {
    spec.x = PolyExp::variable() * PolyExp::cosw(1.0);
    spec.y = PolyExp::variable() * PolyExp::sinw(1.0);
    spec.t0 = -6.0;
    spec.t1 = 6.0;
    spec.golden_z = [](double lam) {
      double k = -1.0 / (6.0 * lam);
      PolyExp t = PolyExp::variable();
      return (t * t * t).scaled(Complex(k, 0.0)) + linear_t(k * (3.0 - 3.0 * lam * lam));
    };
  } else if (name == "circle_spiral") {
    double rho = require_param(params, "rho", name);
    if (!(rho > 1.0)) throw InvalidLambda("circle_spiral requires rho > 1");
    double lr = std::log(rho);
    // (rho^t + 1)(cos t, sin t)
    PolyExp amp = real_exp(1.0, lr) + PolyExp::constant(Complex(1.0, 0.0));
    spec.x = amp * PolyExp::cosw(1.0);
    spec.y = amp * PolyExp::sinw(1.0);
    spec.t0 = -6.0;
    spec.t1 = 6.0;
    // Height consistent with z' = (lambda^2 - x'^2 - y'^2)/(2 lambda); the
    // recorded bracket form misplaces the linear term.
    spec.golden_z = [lr](double lam) {
      return linear_t((lam * lam - 1.0) / (2.0 * lam)) - real_exp(1.0 / (lam * lr), lr) -
             real_exp((1.0 + lr * lr) / (4.0 * lam * lr), 2.0 * lr);
    };
  } else {
    throw UnknownCurve("unknown plane curve '" + name + "'");
  }

  spec.xp = spec.x.derivative();
  spec.yp = spec.y.derivative();
  return spec;
}

struct QuaternionPreset {
  std::string name;
  std::map<std::string, double> params;
  QuaternionCurve q;
  SpinSpec spin_defaults;
};

inline QuaternionPreset catalog_quaternion(const std::string& name,
                                           const std::map<std::string, double>& params = {}) {
  using detail::require_param;

  QuaternionPreset preset;
  preset.name = name;
  preset.params = params;

  if (name == "great_circle") {
    preset.q = QuaternionCurve{PolyExp::cosw(0.5), PolyExp::zero(), PolyExp::zero(),
                               -PolyExp::sinw(0.5)};
    preset.spin_defaults = {2.0, 0.0};
  } else if (name == "torus_knot") {
    double A = require_param(params, "A", name);
    double B = require_param(params, "B", name);
    QuaternionCurve q0{PolyExp::cosw(A), PolyExp::cosw(B), PolyExp::sinw(B), PolyExp::sinw(A)};
    Complex one(1.0, 0.0);
    QuaternionCurve shift{PolyExp::constant(one), PolyExp::constant(one),
                          PolyExp::constant(one), PolyExp::constant(one)};
    QuaternionCurve prod = quat_mul(q0, shift);
    preset.q = QuaternionCurve{0.5 * prod.q1, 0.5 * prod.q2, 0.5 * prod.q3, 0.5 * prod.q4};
    preset.spin_defaults = {0.0, 0.0};
  } else if (name == "circle_product") {
    QuaternionCurve q1{PolyExp::zero(), PolyExp::zero(), PolyExp::cosw(0.5),
                       PolyExp::sinw(0.5)};
    QuaternionCurve q2{-PolyExp::cosw(0.5), PolyExp::zero(), PolyExp::zero(),
                       PolyExp::sinw(0.5)};
    preset.q = quat_mul(q1, q2);
    preset.spin_defaults = {0.0, M_PI / 2.0};
  } else if (name == "small_circle") {
    double sigma = require_param(params, "sigma", name);
    preset.q = QuaternionCurve{PolyExp::constant(Complex(std::sin(sigma), 0.0)),
                               PolyExp::zero(), std::cos(sigma) * PolyExp::cosw(1.0),
                               std::cos(sigma) * PolyExp::sinw(1.0)};
    preset.spin_defaults = {0.0, 0.0};
  } else {
    throw UnknownCurve("unknown quaternion preset '" + name + "'");
  }
  return preset;
}

// Surface over the clothoid (C(t), S(t)): not polyexp, evaluated through the
// Fresnel integrals. G = ((1+lambda)/(1-lambda)) e^{iz^2} and
// dh = ((lambda^2-1)/(2 lambda)) dz, exposed as display strings only.
class ClothoidSurface : public SurfaceEvaluator {
 public:
  explicit ClothoidSurface(double lambda) : lambda_(lambda) {
    if (lambda == 0.0 || lambda == 1.0 || lambda == -1.0)
      throw InvalidLambda("clothoid surface requires lambda not in {0, 1, -1}");
    kappa_ = (lambda * lambda + 1.0) / (2.0 * lambda);
    slope_ = (lambda * lambda - 1.0) / (2.0 * lambda);
  }

  double lambda() const { return lambda_; }

  SurfacePoint at(Complex z) const override {
    auto [C, S] = fresnel(z);
    Complex ik(0.0, kappa_);
    Complex p1 = C + ik * S;
    Complex p2 = S - ik * C;
    Complex p3 = slope_ * z;
    Vec3 pos{p1.real(), p2.real(), p3.real()};

    Complex z2 = z * z;
    Complex phi1 = std::cos(z2) + ik * std::sin(z2);
    Complex phi2 = std::sin(z2) - ik * std::cos(z2);
    Complex phi3(slope_, 0.0);

    Vec3 xu{phi1.real(), phi2.real(), phi3.real()};
    Vec3 xv{-phi1.imag(), -phi2.imag(), -phi3.imag()};
    Vec3 n = xu.cross(xv);
    double nn = n.norm();
    double scale = std::max(1.0, xu.dot(xu) + xv.dot(xv));
    SurfacePoint p;
    p.position = pos;
    if (nn <= 1e-14 * scale) {
      p.unit_normal = Vec3{0.0, 0.0, 0.0};
      p.conformal_factor = 0.0;
    } else {
      p.unit_normal = n * (1.0 / nn);
      p.conformal_factor = xu.norm();
    }
    return p;
  }

  std::string gauss_map_string() const {
    return "((1+lambda)/(1-lambda)) * exp(i*z^2), lambda = " + std::to_string(lambda_);
  }
  std::string dh_string() const {
    return "((lambda^2-1)/(2*lambda)) dz, lambda = " + std::to_string(lambda_);
  }

 private:
  double lambda_;
  double kappa_;  // (lambda^2+1)/(2 lambda)
  double slope_;  // (lambda^2-1)/(2 lambda)
};

inline ClothoidSurface clothoid_surface(double lambda) { return ClothoidSurface(lambda); }

}  // namespace bjorling
