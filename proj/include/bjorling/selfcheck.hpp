#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "bjorling/registry.hpp"
#include "bjorling/tolerances.hpp"

namespace bjorling {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double bound = 0.0;
};

namespace detail {

inline PolyExp drop_constant(const PolyExp& p) {
  std::vector<PolyExpTerm> terms;
  for (const auto& t : p.terms())
    if (!(t.power == 0 && t.rate == Complex(0.0, 0.0))) terms.push_back(t);
  return PolyExp(std::move(terms));
}

// Computed lift height vs recorded closed form, compared coefficient-wise
// modulo the free integration constant.
inline double golden_residual(const PlaneCurveSpec& spec, double lambda,
                              bool mirrored_branch) {
  double lift_lambda = mirrored_branch ? -lambda : lambda;
  LiftResult lift = lift_plane_curve(spec.xp, spec.yp, lift_lambda);
  PolyExp golden = spec.golden_z(lambda);
  return drop_constant(lift.z_coord - golden).max_abs_coeff();
}

}  // namespace detail

inline std::vector<CheckResult> run_self_checks(bool full, double tol_scale = 1.0) {
  std::vector<CheckResult> results;
  auto check = [&](const std::string& name, double residual, double bound) {
    results.push_back({name, residual <= bound * tol_scale, residual, bound * tol_scale});
  };

  // golden lift heights
  struct GoldenCase {
    const char* label;
    PlaneCurveSpec spec;
    bool mirrored;
  };
  std::vector<GoldenCase> golden = {
      {"golden-z circle", catalog_plane("circle"), false},
      {"golden-z ellipse", catalog_plane("ellipse"), false},
      {"golden-z lissajous(1,2)", catalog_plane("lissajous", {{"xi", 1.0}, {"eta", 2.0}}),
       false},
      {"golden-z cycloid(2,1,2)",
       catalog_plane("cycloid", {{"R", 2.0}, {"r", 1.0}, {"s", 2.0}}), false},
      {"golden-z deltoid", catalog_plane("deltoid"), false},
      {"golden-z trefoil(1/4)", catalog_plane("trefoil", {{"xi", 0.25}}), true},
      {"golden-z archimedean", catalog_plane("archimedean"), false},
      {"golden-z log-spiral(e)", catalog_plane("log_spiral", {{"rho", M_E}}), false},
      {"golden-z circle-limit(e)", catalog_plane("circle_spiral", {{"rho", M_E}}), false},
  };
  for (const auto& g : golden) {
    double worst = 0.0;
    for (double lam : {0.75, 1.5, 2.0, 3.0, std::sqrt(5.0)})
      worst = std::max(worst, detail::golden_residual(g.spec, lam, g.mirrored));
    check(g.label, worst, tol::kGoldenCoeff);
  }

  // closing lambda values
  {
    auto ellipse = catalog_plane("ellipse");
    check("closing-lambda ellipse = sqrt 5",
          std::abs(closing_lambda(ellipse.xp, ellipse.yp, 0.0, 2.0 * M_PI) - std::sqrt(5.0)),
          tol::kClosingLambda);
    auto cyc = catalog_plane("cycloid", {{"R", 2.0}, {"r", 1.0}, {"s", 2.0}});
    check("closing-lambda cycloid = 3 sqrt 5",
          std::abs(closing_lambda(cyc.xp, cyc.yp, 0.0, 2.0 * M_PI) - 3.0 * std::sqrt(5.0)),
          tol::kClosingLambda);
    auto del = catalog_plane("deltoid");
    check("closing-lambda deltoid = 2 sqrt 2",
          std::abs(closing_lambda(del.xp, del.yp, 0.0, 2.0 * M_PI) - 2.0 * std::sqrt(2.0)),
          tol::kClosingLambda);
    auto tre = catalog_plane("trefoil", {{"xi", 0.25}});
    check("closing-lambda trefoil = sqrt(17)/4",
          std::abs(closing_lambda(tre.xp, tre.yp, 0.0, 2.0 * M_PI) - std::sqrt(17.0) / 4.0),
          tol::kClosingLambda);
    auto lis = catalog_plane("lissajous", {{"xi", 1.0}, {"eta", 2.0}});
    check("closing-lambda lissajous = sqrt(5/2)",
          std::abs(closing_lambda(lis.xp, lis.yp, 0.0, 2.0 * M_PI) - std::sqrt(2.5)),
          tol::kClosingLambda);
  }

  // Weierstrass spot check: G(w) = (1/w)(w^a + i)/(w^a - i) over a circular core
  {
    QuaternionPreset preset = catalog_quaternion("great_circle");
    FrameCurve frame = phi_of_quaternion(preset.q);
    for (int a : {1, 2, 3}) {
      BjorlingSurface s = build_surface(frame, {static_cast<double>(a), 0.0}, 0.0, Vec3{});
      WeierstrassData w = weierstrass_data(s);
      double worst = 0.0;
      for (int k = 0; k < 16; ++k) {
        Complex ww = std::polar(1.0, 2.0 * M_PI * k / 16.0 + 0.21);
        Complex wa = std::pow(ww, a);
        Complex expected = (wa + Complex(0.0, 1.0)) / (wa - Complex(0.0, 1.0)) / ww;
        worst = std::max(worst, std::abs(w.gauss.eval(ww) - expected));
        Complex dh_expected = 0.5 * (wa * wa + 1.0) / std::pow(ww, a + 1);
        worst = std::max(worst, std::abs(w.dh.eval(ww) - dh_expected));
      }
      check("weierstrass circular a=" + std::to_string(a), worst, tol::kWeierstrassCoeff);
    }
  }

  // Fresnel oracle
  {
    auto [c1, s1] = fresnel(Complex(1.0, 0.0));
    Complex cq = integrate_segment([](Complex s) { return std::cos(s * s); },
                                   Complex(0.0, 0.0), Complex(1.0, 0.0), 24, 12);
    check("fresnel C(1) vs quadrature", std::abs(c1 - cq), 1e-12);
    double h = 1e-6;
    auto [cp, sp] = fresnel(Complex(1.0 + h, 0.0));
    auto [cm, sm] = fresnel(Complex(1.0 - h, 0.0));
    check("fresnel C'(1) = cos(1)",
          std::abs((cp - cm).real() / (2.0 * h) - std::cos(1.0)), 1e-8);
    (void)s1;
    (void)sp;
    (void)sm;
  }

  // closed form vs direct quadrature of the defining integral
  {
    std::vector<std::string> names = full
                                         ? std::vector<std::string>{"circular-a2", "enneper",
                                                                    "periodic-a5",
                                                                    "ellipse-closed",
                                                                    "lissajous"}
                                         : std::vector<std::string>{"circular-a2"};
    for (const auto& name : names) {
      BuiltJob job = build_job(find_example(name).config);
      const BjorlingSurface& s = *job.surface;
      QuadratureSpec spec{16, 12};
      double worst = 0.0, path_worst = 0.0, scale = 1.0;
      int n = full ? 12 : 5;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Complex z(-M_PI + 2.0 * M_PI * i / (n - 1), -1.0 + 2.0 * j / (n - 1));
          QuadratureResult q = bjorling_quadrature(s.core(), s.integrand(), s.t0(), z, spec);
          Vec3 closed = s.at(z).position;
          scale = std::max({scale, closed.norm()});
          worst = std::max(worst, (closed - q.position).norm());
          path_worst = std::max(path_worst, q.path_residual);
        }
      check("quadrature " + name, worst / scale, tol::kQuadrature);
      check("path-independence " + name, path_worst, tol::kPathIndependence);
    }
  }

  // mean curvature residuals
  {
    std::vector<std::string> names =
        full ? std::vector<std::string>{"circular-a2", "enneper", "periodic-a5",
                                        "ellipse-closed", "lissajous"}
             : std::vector<std::string>{"circular-a2", "ellipse-closed"};
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> du(0.0, 2.0 * M_PI), dv(-0.4, 0.4);
    for (const auto& name : names) {
      BuiltJob job = build_job(find_example(name).config);
      double worst = 0.0;
      int npts = full ? 20 : 6;
      for (int i = 0; i < npts; ++i) {
        Complex z(du(rng), dv(rng));
        try {
          worst = std::max(worst, mean_curvature_numeric(*job.evaluator, z, 1e-4));
        } catch (const SingularPointError&) {
        }
      }
      check("mean-curvature " + name, worst, tol::kMeanCurvature);
    }
  }

  // null-curve identity over the registry
  {
    for (const auto& entry : example_registry()) {
      if (entry.config.method == "clothoid") continue;
      if (!full && entry.name != "circular-a2" && entry.name != "trefoil-mobius") continue;
      BuiltJob job = build_job(entry.config);
      PolyExp residual = job.surface->null_residual();
      double scale = 1.0;
      for (const auto& p : job.surface->phi()) {
        double m = p.max_abs_coeff();
        scale = std::max(scale, m * m);
      }
      check("null-identity " + entry.name, residual.max_abs_coeff() / scale,
            tol::kNullResidual);
    }
  }

  return results;
}

}  // namespace bjorling
