#pragma once

// Tolerance manifest for the oracle and acceptance checks, kept in one place
// so a failing check names the knob that tripped. Values sit one to two
// orders above the arithmetic noise floor measured on the circle case;
// irrational constants (sqrt 5 and friends) rule out exactness.

namespace bjorling::tol {

inline constexpr double kGoldenCoeff = 1e-12;        // golden lift formulas, coefficient-wise
inline constexpr double kClosingLambda = 1e-12;      // closing lambda values
inline constexpr double kWeierstrassCoeff = 1e-10;   // G/dh coefficient comparisons
inline constexpr double kResultantRel = 1e-8;        // resultant identity, relative
inline constexpr double kCommonRoot = 1e-8;          // common-root locations
inline constexpr double kNullResidual = 1e-12;       // null-curve identity, relative
inline constexpr double kQuadrature = 1e-8;          // closed form vs quadrature, absolute
inline constexpr double kPathIndependence = 1e-9;    // straight vs L-shaped contour
inline constexpr double kMeanCurvature = 1e-5;       // |H| * |X_u| residual
inline constexpr double kAxisInterpolation = 1e-12;  // X(t, 0) vs core curve
inline constexpr double kNormalAngle = 1e-8;         // surface normal vs n(t), radians
inline constexpr double kConformality = 1e-9;        // | |Xu| - |Xv| | / |Xu|
inline constexpr double kFresnel = 1e-10;            // series vs quadrature

struct Entry {
  const char* name;
  double value;
  const char* what;
};

inline constexpr Entry kManifest[] = {
    {"golden_coeff", kGoldenCoeff, "golden lift formulas, coefficient-wise"},
    {"closing_lambda", kClosingLambda, "closing lambda values"},
    {"weierstrass_coeff", kWeierstrassCoeff, "Gauss map / height differential coefficients"},
    {"resultant_rel", kResultantRel, "resultant identity, relative"},
    {"common_root", kCommonRoot, "common-root locations"},
    {"null_residual", kNullResidual, "null-curve identity, relative"},
    {"quadrature", kQuadrature, "closed form vs quadrature, absolute"},
    {"path_independence", kPathIndependence, "contour path independence"},
    {"mean_curvature", kMeanCurvature, "mean-curvature residual"},
    {"axis_interpolation", kAxisInterpolation, "core-curve interpolation"},
    {"normal_angle", kNormalAngle, "normal interpolation, radians"},
    {"conformality", kConformality, "conformality residual"},
    {"fresnel", kFresnel, "Fresnel series vs quadrature"},
};

}  // namespace bjorling::tol
