#pragma once

#include <array>
#include <cmath>
#include <memory>

#include "bjorling/frames.hpp"
#include "bjorling/polyexp.hpp"

namespace bjorling {

// Rotating-normal parameters: angle(t) = a t + b.
struct SpinSpec {
  double a = 0.0;
  double b = 0.0;
};

struct SurfacePoint {
  Vec3 position;
  Vec3 unit_normal;         // zero vector at singular points
  double conformal_factor;  // |X_u|; zero flags a singular point
};

class SurfaceEvaluator {
 public:
  virtual ~SurfaceEvaluator() = default;
  virtual SurfacePoint at(Complex z) const = 0;
};

// Unit normal n(t) = numerator / mu with
// numerator = cos(at+b) e_p + sin(at+b) e_q over the frame's normal columns.
struct SpinNormal {
  PolyExpVec3 numerator;
  PolyExp denominator;
};

inline SpinNormal spin_normal(const FrameCurve& frame, const SpinSpec& spin) {
  PolyExp c = PolyExp::cosw(spin.a, spin.b);
  PolyExp s = PolyExp::sinw(spin.a, spin.b);
  PolyExpVec3 num = frame.normal1().scaled(c) + frame.normal2().scaled(s);
  return {num, frame.mu()};
}

// n ^ c' stays polyexp: with orthonormal columns e_i/mu (right-handed),
// n ^ c' = sin(at+b) e_p - cos(at+b) e_q. No division happens.
inline PolyExpVec3 spin_integrand(const FrameCurve& frame, const SpinSpec& spin) {
  PolyExp c = PolyExp::cosw(spin.a, spin.b);
  PolyExp s = PolyExp::sinw(spin.a, spin.b);
  return frame.normal1().scaled(s) - frame.normal2().scaled(c);
}

// Closed-form Bjorling surface X(z) = Re(c(z) - i F(z)) with c the integrated
// core curve (c(t0) = offset) and F the integral of n ^ c' (F(t0) = 0).
class BjorlingSurface : public SurfaceEvaluator {
 public:
  BjorlingSurface(PolyExpVec3 c, PolyExpVec3 f, PolyExpVec3 phi_re, PolyExpVec3 phi_im,
                  double t0, Vec3 offset)
      : c_(std::move(c)),
        f_(std::move(f)),
        dcore_(std::move(phi_re)),
        integrand_(std::move(phi_im)),
        t0_(t0),
        offset_(offset) {}

  const PolyExpVec3& core() const { return c_; }
  const PolyExpVec3& normal_integral() const { return f_; }
  const PolyExpVec3& core_derivative() const { return dcore_; }
  const PolyExpVec3& integrand() const { return integrand_; }
  double t0() const { return t0_; }
  Vec3 offset() const { return offset_; }

  // phi = c' - i (n ^ c'), the holomorphic derivative triple.
  std::array<PolyExp, 3> phi() const {
    Complex mi(0.0, -1.0);
    return {dcore_.x + integrand_.x.scaled(mi), dcore_.y + integrand_.y.scaled(mi),
            dcore_.z + integrand_.z.scaled(mi)};
  }

  // Residual of the null-curve identity phi_1^2 + phi_2^2 + phi_3^2 = 0.
  PolyExp null_residual() const {
    auto p = phi();
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  }

  SurfacePoint at(Complex z) const override {
    auto cz = c_.eval(z);
    auto fz = f_.eval(z);
    // Re(c - iF) componentwise.
    Vec3 pos{cz[0].real() + fz[0].imag(), cz[1].real() + fz[1].imag(),
             cz[2].real() + fz[2].imag()};

    auto dz = dcore_.eval(z);
    auto gz = integrand_.eval(z);
    // phi = c' - i g; X_u = Re phi, X_v = -Im phi.
    Vec3 xu{dz[0].real() + gz[0].imag(), dz[1].real() + gz[1].imag(),
            dz[2].real() + gz[2].imag()};
    Vec3 xv{-dz[0].imag() + gz[0].real(), -dz[1].imag() + gz[1].real(),
            -dz[2].imag() + gz[2].real()};

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

 private:
  PolyExpVec3 c_, f_;
  PolyExpVec3 dcore_;      // c' = frame tangent column, exact
  PolyExpVec3 integrand_;  // n ^ c', exact
  double t0_;
  Vec3 offset_;
};

inline BjorlingSurface build_surface(const FrameCurve& frame, const SpinSpec& spin, double t0,
                                     Vec3 offset) {
  const PolyExpVec3& tangent = frame.tangent();
  PolyExpVec3 c = tangent.antiderivative(t0);
  c.x = c.x + PolyExp::constant(Complex(offset.x, 0.0));
  c.y = c.y + PolyExp::constant(Complex(offset.y, 0.0));
  c.z = c.z + PolyExp::constant(Complex(offset.z, 0.0));
  PolyExpVec3 g = spin_integrand(frame, spin);
  PolyExpVec3 f = g.antiderivative(t0);
  return BjorlingSurface(std::move(c), std::move(f), tangent, std::move(g), t0, offset);
}

}  // namespace bjorling
