#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include "bjorling/polyexp.hpp"

namespace bjorling {

// Quaternion q1*1 + q2*i + q3*j + q4*k with polyexp components.
struct QuaternionCurve {
  PolyExp q1, q2, q3, q4;

  PolyExp norm2() const { return q1 * q1 + q2 * q2 + q3 * q3 + q4 * q4; }
};

inline QuaternionCurve quat_mul(const QuaternionCurve& a, const QuaternionCurve& b) {
  return QuaternionCurve{
      a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3 - a.q4 * b.q4,
      a.q1 * b.q2 + a.q2 * b.q1 + a.q3 * b.q4 - a.q4 * b.q3,
      a.q1 * b.q3 - a.q2 * b.q4 + a.q3 * b.q1 + a.q4 * b.q2,
      a.q1 * b.q4 + a.q2 * b.q3 - a.q3 * b.q2 + a.q4 * b.q1};
}

// Matrix curve M(t) with (1/mu) M in SO(3). Column `tangent_col` integrates to
// the core curve; `normal_cols` is the ordered pair feeding the spinning
// normal. (tangent, normal_1, normal_2) is always an even permutation of the
// columns, so cross-product identities hold in one form.
class FrameCurve {
 public:
  FrameCurve(std::array<PolyExpVec3, 3> cols, PolyExp mu, int tangent_col,
             std::pair<int, int> normal_cols)
      : cols_(std::move(cols)),
        mu_(std::move(mu)),
        tangent_col_(tangent_col),
        normal_cols_(normal_cols) {
    validate();
  }

  const PolyExpVec3& col(int i) const { return cols_[i]; }
  const PolyExpVec3& tangent() const { return cols_[tangent_col_]; }
  const PolyExpVec3& normal1() const { return cols_[normal_cols_.first]; }
  const PolyExpVec3& normal2() const { return cols_[normal_cols_.second]; }
  const PolyExp& mu() const { return mu_; }
  int tangent_col() const { return tangent_col_; }
  std::pair<int, int> normal_cols() const { return normal_cols_; }

  // Max residual coefficient of M^T M - mu^2 I over all 9 entries.
  double gram_residual() const {
    PolyExp mu2 = mu_ * mu_;
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        PolyExp entry = cols_[i].dot(cols_[j]);
        if (i == j) entry = entry - mu2;
        r = std::max(r, entry.max_abs_coeff());
      }
    return r;
  }

  double det_residual() const {
    PolyExp det = cols_[0].x * (cols_[1].y * cols_[2].z - cols_[1].z * cols_[2].y) -
                  cols_[1].x * (cols_[0].y * cols_[2].z - cols_[0].z * cols_[2].y) +
                  cols_[2].x * (cols_[0].y * cols_[1].z - cols_[0].z * cols_[1].y);
    return (det - mu_ * mu_ * mu_).max_abs_coeff();
  }

  double coefficient_scale() const {
    double s = mu_.max_abs_coeff();
    s = s * s;
    for (const auto& c : cols_) {
      double m = c.max_abs_coeff();
      s = std::max(s, m * m);
    }
    return std::max(1.0, s);
  }

 private:
  void validate() const {
    constexpr std::array<std::array<int, 3>, 3> even = {
        {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
    bool ok = false;
    for (const auto& p : even)
      ok = ok || (tangent_col_ == p[0] && normal_cols_.first == p[1] &&
                  normal_cols_.second == p[2]);
    if (!ok) throw FrameInvariantViolation("frame column roles must be an even permutation");

    for (const auto& c : cols_)
      if (!c.real_on_axis(1e-9)) throw NotRealOnAxis("frame column is not real on the axis");
    if (!mu_.real_on_axis(1e-9)) throw NotRealOnAxis("frame multiplier is not real on the axis");

    double scale = coefficient_scale();
    if (gram_residual() > 1e-10 * scale)
      throw FrameInvariantViolation("M^T M != mu^2 I in the polyexp ring");
    if (det_residual() > 1e-10 * scale * std::max(1.0, mu_.max_abs_coeff()))
      throw FrameInvariantViolation("det M != mu^3 (orientation must be +1)");

    for (int i = 0; i < 64; ++i) {
      double t = -10.0 + 20.0 * i / 63.0;
      if (std::abs(mu_.eval_real(t)) < 1e-12 * std::max(1.0, mu_.max_abs_coeff()))
        throw FrameInvariantViolation("mu vanishes on the real axis");
    }
  }

  std::array<PolyExpVec3, 3> cols_;
  PolyExp mu_;
  int tangent_col_;
  std::pair<int, int> normal_cols_;
};

// The conjugation action v -> q v conj(q) on imaginary quaternions, as an
// explicit scaled rotation with mu = |q|^2. Tangent column is the first.
inline FrameCurve phi_of_quaternion(const QuaternionCurve& q) {
  for (const PolyExp* c : {&q.q1, &q.q2, &q.q3, &q.q4})
    if (!c->real_on_axis(1e-9))
      throw NotRealOnAxis("quaternion components must be real on the axis");

  PolyExp mu = q.norm2();
  bool vanishes = true;
  double scale = std::max(1.0, mu.max_abs_coeff());
  for (int i = 0; i < 16 && vanishes; ++i) {
    double t = -6.0 + 12.0 * i / 15.0;
    if (std::abs(mu.eval_real(t)) > 1e-12 * scale) vanishes = false;
  }
  if (mu.is_zero() || vanishes)
    throw DegenerateQuaternion("|q(t)|^2 is identically zero");

  const PolyExp s1 = q.q1 * q.q1, s2 = q.q2 * q.q2, s3 = q.q3 * q.q3, s4 = q.q4 * q.q4;
  auto two = [](const PolyExp& a, const PolyExp& b) { return 2.0 * (a * b); };

  PolyExpVec3 c0{s1 + s2 - s3 - s4,                      // (1,1)
                 two(q.q1, q.q4) + two(q.q2, q.q3),      // (2,1)
                 two(q.q2, q.q4) - two(q.q1, q.q3)};     // (3,1)
  PolyExpVec3 c1{two(q.q2, q.q3) - two(q.q1, q.q4),      // (1,2)
                 s1 - s2 + s3 - s4,                      // (2,2)
                 two(q.q1, q.q2) + two(q.q3, q.q4)};     // (3,2)
  PolyExpVec3 c2{two(q.q1, q.q3) + two(q.q2, q.q4),      // (1,3)
                 two(q.q3, q.q4) - two(q.q1, q.q2),      // (2,3)
                 s1 - s2 - s3 + s4};                     // (3,3)

  return FrameCurve({c0, c1, c2}, mu, 0, {1, 2});
}

// R(v) = 2 v v^T - (v^T v) I: 180-degree rotation about v scaled by |v|^2.
// Returned as columns, together with |v|^2.
struct RotationScaling {
  std::array<PolyExpVec3, 3> cols;
  PolyExp norm2;
};

inline RotationScaling rotation_scaling(const PolyExpVec3& v) {
  PolyExp s = v.x * v.x + v.y * v.y + v.z * v.z;
  PolyExp xy = v.x * v.y, xz = v.x * v.z, yz = v.y * v.z;
  PolyExpVec3 c0{2.0 * (v.x * v.x) - s, 2.0 * xy, 2.0 * xz};
  PolyExpVec3 c1{2.0 * xy, 2.0 * (v.y * v.y) - s, 2.0 * yz};
  PolyExpVec3 c2{2.0 * xz, 2.0 * yz, 2.0 * (v.z * v.z) - s};
  return {{c0, c1, c2}, s};
}

// Lift of a plane curve with derivative (xp, yp): frame, lifted height
// z(t) with z(0) = 0, and the projection-preserving core tangent
// (xp, yp, (lambda^2 - xp^2 - yp^2)/(2 lambda)).
struct LiftResult {
  FrameCurve frame;
  PolyExp z_coord;
  std::optional<double> lambda;  // set for the constant-lambda lift
  PolyExpVec3 core_tangent;
};

inline LiftResult lift_plane_curve(const PolyExp& xp, const PolyExp& yp, double lambda) {
  if (lambda == 0.0) throw ZeroLambda("lambda must be nonzero");
  if (!xp.real_on_axis(1e-9) || !yp.real_on_axis(1e-9))
    throw NotRealOnAxis("plane curve derivatives must be real on the axis");

  PolyExpVec3 v{xp, yp, PolyExp::constant(Complex(lambda, 0.0))};
  RotationScaling r = rotation_scaling(v);
  Complex inv(1.0 / (2.0 * lambda), 0.0);
  std::array<PolyExpVec3, 3> cols = {r.cols[0].scaled(inv), r.cols[1].scaled(inv),
                                     r.cols[2].scaled(inv)};
  PolyExp mu = r.norm2.scaled(inv);
  FrameCurve frame(cols, mu, 2, {0, 1});
  PolyExpVec3 tangent = frame.tangent();
  PolyExp z = tangent.z.antiderivative(0.0);
  return LiftResult{std::move(frame), std::move(z), lambda, tangent};
}

// Non-constant lambda(t). The scaled frame (1/(2 lambda)) R is not polyexp in
// general, so the frame is the unscaled R(xp, yp, lambda) with
// mu = lambda^2 + xp^2 + yp^2; the projection-preserving tangent
// (xp, yp, (lambda - quotient)/2) and its z-integral are carried separately.
// The caller supplies quotient = (xp^2 + yp^2)/lambda exactly.
inline LiftResult lift_plane_curve_varlambda(const PolyExp& xp, const PolyExp& yp,
                                             const PolyExp& lambda, const PolyExp& quotient) {
  PolyExp speed2 = xp * xp + yp * yp;
  PolyExp residual = quotient * lambda - speed2;
  if (!effectively_zero(residual, std::max(1.0, speed2.max_abs_coeff())))
    throw QuotientMismatch("quotient * lambda != xp^2 + yp^2 in the polyexp ring");
  if (!lambda.real_on_axis(1e-9)) throw NotRealOnAxis("lambda must be real on the axis");
  double lscale = std::max(1.0, lambda.max_abs_coeff());
  for (int i = 0; i < 64; ++i) {
    double t = -10.0 + 20.0 * i / 63.0;
    if (std::abs(lambda.eval_real(t)) < 1e-10 * lscale)
      throw LambdaVanishes("lambda(t) vanishes on the sampled axis");
  }

  // Constant lambda delegates to the scaled construction.
  if (lambda.terms().size() == 1 && lambda.terms()[0].power == 0 &&
      lambda.terms()[0].rate == Complex(0.0, 0.0))
    return lift_plane_curve(xp, yp, lambda.terms()[0].coeff.real());

  PolyExpVec3 v{xp, yp, lambda};
  RotationScaling r = rotation_scaling(v);
  FrameCurve frame(r.cols, r.norm2, 2, {0, 1});
  PolyExpVec3 core{xp, yp, 0.5 * (lambda - quotient)};
  PolyExp z = core.z.antiderivative(0.0);
  return LiftResult{std::move(frame), std::move(z), std::nullopt, core};
}

// Translational period of the lifted height over [t0, t1]:
// T = lambda (t1 - t0)/2 - (1/(2 lambda)) int (xp^2 + yp^2).
inline double period_z(const PolyExp& xp, const PolyExp& yp, double lambda, double t0,
                       double t1) {
  if (lambda == 0.0) throw ZeroLambda("lambda must be nonzero");
  PolyExp speed2 = xp * xp + yp * yp;
  double integral = speed2.antiderivative(t0).eval(Complex(t1, 0.0)).real();
  return 0.5 * lambda * (t1 - t0) - integral / (2.0 * lambda);
}

// Positive root of period_z = 0: lambda = sqrt(mean of xp^2 + yp^2).
inline double closing_lambda(const PolyExp& xp, const PolyExp& yp, double t0, double t1) {
  PolyExp speed2 = xp * xp + yp * yp;
  double integral = speed2.antiderivative(t0).eval(Complex(t1, 0.0)).real();
  double mean = integral / (t1 - t0);
  if (!(mean > 1e-14)) throw DegenerateCurve("curve has zero speed, no closing lambda");
  return std::sqrt(mean);
}

}  // namespace bjorling
