// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. argv[1] optionally names the CLI binary (used by the
// determinism criterion).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bjorling/registry.hpp"
#include "bjorling/selfcheck.hpp"

namespace fs = std::filesystem;
using namespace bjorling;

namespace {

const Complex I(0.0, 1.0);
int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

PolyExp drop_constant(const PolyExp& p) {
  std::vector<PolyExpTerm> terms;
  for (const auto& t : p.terms())
    if (!(t.power == 0 && t.rate == Complex(0.0, 0.0))) terms.push_back(t);
  return PolyExp(std::move(terms));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion_golden_heights() {
  Timer timer;
  struct Case {
    const char* label;
    PlaneCurveSpec spec;
    bool mirrored;  // printed form integrates the mirrored (-lambda) frame
  };
  std::vector<Case> cases = {
      {"ellipse", catalog_plane("ellipse"), false},
      {"lissajous(1,2)", catalog_plane("lissajous", {{"xi", 1.0}, {"eta", 2.0}}), false},
      {"cycloid(2,1,2)", catalog_plane("cycloid", {{"R", 2.0}, {"r", 1.0}, {"s", 2.0}}),
       false},
      {"deltoid", catalog_plane("deltoid"), false},
      {"trefoil(1/4)", catalog_plane("trefoil", {{"xi", 0.25}}), true},
      {"archimedean", catalog_plane("archimedean"), false},
      {"log-spiral(e)", catalog_plane("log_spiral", {{"rho", M_E}}), false},
      {"circle-limit(e)", catalog_plane("circle_spiral", {{"rho", M_E}}), false},
  };
  double worst = 0.0;
  std::string worst_label = "-";
  for (const auto& c : cases) {
    for (double lam : {0.8, 1.0, 2.0, std::sqrt(5.0), 3.5}) {
      LiftResult lift = lift_plane_curve(c.spec.xp, c.spec.yp, c.mirrored ? -lam : lam);
      double r = drop_constant(lift.z_coord - c.spec.golden_z(lam)).max_abs_coeff() /
                 std::max(1.0, lift.z_coord.max_abs_coeff());
      if (r > worst) {
        worst = r;
        worst_label = c.label;
      }
    }
  }
  bool pass = worst <= tol::kGoldenCoeff && timer.seconds() < 1.0;
  report(1, pass,
         "golden lift heights, worst " + fmt(worst) + " (" + worst_label + "), " +
             fmt(timer.seconds()) + " s");
}

// ---------------------------------------------------------------- criterion 2
void criterion_closing_lambdas() {
  Timer timer;
  auto closing = [](const PlaneCurveSpec& s) {
    return closing_lambda(s.xp, s.yp, 0.0, 2.0 * M_PI);
  };
  double xi = 0.25;
  double worst = 0.0;
  worst = std::max(worst, std::abs(closing(catalog_plane("ellipse")) - std::sqrt(5.0)));
  worst = std::max(
      worst, std::abs(closing(catalog_plane("cycloid", {{"R", 2.0}, {"r", 1.0}, {"s", 2.0}})) -
                      3.0 * std::sqrt(5.0)));
  worst = std::max(worst,
                   std::abs(closing(catalog_plane("deltoid")) - 2.0 * std::sqrt(2.0)));
  worst = std::max(worst, std::abs(closing(catalog_plane("trefoil", {{"xi", xi}})) -
                                   std::sqrt(xi * xi + 1.0)));
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 2}, {3, 2}}) {
    worst = std::max(
        worst, std::abs(closing(catalog_plane("lissajous", {{"xi", a}, {"eta", b}})) -
                        std::sqrt((a * a + b * b) / 2.0)));
  }
  bool pass = worst <= tol::kClosingLambda && timer.seconds() < 1.0;
  report(2, pass, "closing lambda values, worst " + fmt(worst) + ", " + fmt(timer.seconds()) +
                      " s");
}

// ---------------------------------------------------------------- criterion 3
void criterion_circular_weierstrass() {
  double worst = 0.0;
  std::string detail;
  bool pass = true;
  for (double a : {1.0, 2.0, 3.0, 7.0, 3.5}) {
    FrameCurve frame = phi_of_quaternion(catalog_quaternion("great_circle").q);
    BjorlingSurface s = build_surface(frame, {a, 0.0}, 0.0, Vec3{});
    WeierstrassData w = weierstrass_data(s);
    int d_expect = (a == 3.5) ? 2 : 1;
    if (w.d != d_expect) {
      pass = false;
      detail += " d mismatch at a=" + std::to_string(a);
      continue;
    }
    int ad = static_cast<int>(a * w.d);

    // expected G = (w^{ad} + i) / (w^d (w^{ad} - i)) as a Laurent pair;
    // cross-multiplied coefficient comparison
    LaurentPoly e_num, e_den;
    e_num.add(ad, Complex(1.0, 0.0));
    e_num.add(0, I);
    e_den.add(ad + w.d, Complex(1.0, 0.0));
    e_den.add(w.d, -I);
    LaurentPoly lhs = w.gauss.num * e_den;
    LaurentPoly rhs = w.gauss.den * e_num;
    Complex gamma = lhs.coeffs().begin()->second / rhs.coeff(lhs.coeffs().begin()->first);
    double scale = std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff());
    worst = std::max(worst, (lhs - rhs.scaled(gamma)).max_abs_coeff() / scale);

    // expected dh = (d/2) (w^{2ad} + 1) w^{-ad-1}, up to one unit-modulus
    // constant shared with the surface normalization
    LaurentPoly e_dh;
    e_dh.add(ad - 1, Complex(w.d / 2.0, 0.0));
    e_dh.add(-ad - 1, Complex(w.d / 2.0, 0.0));
    Complex gdh = w.dh.num.coeff(ad - 1) / e_dh.coeff(ad - 1);
    worst = std::max(worst, std::abs(std::abs(gdh) - 1.0));
    worst = std::max(worst, (w.dh.num - e_dh.scaled(gdh)).max_abs_coeff() /
                                std::max(1.0, e_dh.max_abs_coeff()));
  }
  pass = pass && worst <= tol::kWeierstrassCoeff;
  report(3, pass,
         "circular helicoid data for a in {1,2,3,7,7/2}, worst coeff " + fmt(worst) + detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion_resultant_identity() {
  // recorded closed form -8^{a+1} i^a e^{(a+2) i b}; the recorded orientation
  // is resultant(Q, P) in the standard Sylvester convention
  auto periodic_P = [](int a, double b) {
    Complex eib = std::polar(1.0, b);
    LaurentPoly p;
    p.add(a + 2, eib);
    p.add(a, eib);
    p.add(2, -I);
    p.add(1, -2.0 * I);
    p.add(0, I);
    return p;
  };
  auto periodic_Q = [](int a, double b) {
    Complex eib = std::polar(1.0, b);
    LaurentPoly q;
    q.add(a + 2, eib);
    q.add(a + 1, -2.0 * eib);
    q.add(a, -eib);
    q.add(2, -I);
    q.add(0, -I);
    return q;
  };

  bool pass = true;
  std::string failures;
  double worst = 0.0;
  for (int a = 0; a <= 4; ++a) {
    for (double b : {0.0, M_PI / 4.0, M_PI / 2.0}) {
      Complex formula = -std::pow(8.0, a + 1) * std::pow(I, a) * std::polar(1.0, (a + 2) * b);
      Complex got = resultant(periodic_Q(a, b), periodic_P(a, b));
      double rel = std::abs(got - formula) / std::abs(formula);
      worst = std::max(worst, rel);
      if (rel > tol::kResultantRel) {
        pass = false;
        char buf[64];
        std::snprintf(buf, sizeof(buf), " (a=%d,b=%.2f: rel %.2e)", a, b, rel);
        failures += buf;
      }
    }
  }
  std::string detail = "periodic-family resultant identity, worst rel " + fmt(worst);
  if (!pass)
    detail +=
        " — closed form holds for a >= 1; at a = 0 the displayed polynomials "
        "collide in degree and their true resultant departs from the formula:" +
        failures;
  report(4, pass, detail);
}

// ---------------------------------------------------------------- criterion 5
void criterion_degree_table() {
  bool pass = true;
  std::string bad;
  auto expect_degree = [&](const WeierstrassData& w, int expect, const std::string& label) {
    int got = gauss_degree(w.gauss);
    if (got != expect) {
      pass = false;
      bad += " " + label + "=" + std::to_string(got) + "(want " + std::to_string(expect) + ")";
    }
  };

  FrameCurve circular = phi_of_quaternion(catalog_quaternion("great_circle").q);
  FrameCurve enneper =
      phi_of_quaternion(catalog_quaternion("torus_knot", {{"A", -0.5}, {"B", 1.5}}).q);
  FrameCurve periodic = phi_of_quaternion(catalog_quaternion("circle_product").q);
  auto circle = catalog_plane("circle");

  for (int a = 1; a <= 6; ++a) {
    double ad = a;
    expect_degree(weierstrass_data(build_surface(circular, {ad, 0.0}, 0.0, Vec3{})), a + 1,
                  "circular a=" + std::to_string(a));
    expect_degree(weierstrass_data(build_surface(enneper, {ad, 0.0}, 0.0, Vec3{})), a + 3,
                  "enneper a=" + std::to_string(a));
    expect_degree(weierstrass_data(build_surface(periodic, {ad, 0.0}, 0.0, Vec3{})), a + 2,
                  "periodic a=" + std::to_string(a));
    expect_degree(weierstrass_data_lift(circle.xp, circle.yp, 2.0, {ad, 0.0}), a,
                  "helix a=" + std::to_string(a));
  }
  expect_degree(weierstrass_data(build_surface(enneper, {0.0, 0.0}, 0.0, Vec3{})), 1,
                "enneper a=0");
  expect_degree(weierstrass_data(build_surface(periodic, {0.0, M_PI / 2.0}, 0.0, Vec3{})), 1,
                "periodic (0,pi/2)");
  expect_degree(weierstrass_data(build_surface(periodic, {0.0, 0.0}, 0.0, Vec3{})), 2,
                "periodic (0,0)");
  report(5, pass, pass ? "degree table reproduced exactly" : "degree mismatches:" + bad);
}

// ---------------------------------------------------------------- criterion 6
void criterion_singular_detection() {
  bool pass = true;
  std::string detail;

  auto ellipse = catalog_plane("ellipse");
  WeierstrassData w1 = weierstrass_data_lift(ellipse.xp, ellipse.yp, 1.0, {2.0, 0.0});
  RegularityReport rep = regularity_report(w1);
  double beta = (std::sqrt(5.0) - 1.0) / 2.0;
  double gamma = (std::sqrt(5.0) + 1.0) / 2.0;
  bool plus = false, minus = false;
  for (Complex r : rep.common_roots) {
    if (std::abs(r - Complex(0.0, beta)) <= tol::kCommonRoot) plus = true;
    if (std::abs(r - Complex(0.0, -gamma)) <= tol::kCommonRoot) minus = true;
  }
  if (rep.is_regular || !plus || !minus || rep.common_roots.size() != 2) {
    pass = false;
    detail += " ellipse-roots";
  }

  auto del = catalog_plane("deltoid");
  bool degenerate_caught = false;
  try {
    singular_lambda_locus(del.xp, del.yp, {-0.5, M_PI / 2.0}, SearchBox{});
  } catch (const DegenerateSpinDirection& e) {
    PolyExp expect = (-4.0) * PolyExp::sinw(1.5);
    degenerate_caught = (e.r - expect).max_abs_coeff() <= 1e-10;
  }
  if (!degenerate_caught) {
    pass = false;
    detail += " deltoid-degenerate-direction";
  }

  auto tre = catalog_plane("trefoil", {{"xi", 0.25}});
  WeierstrassData wt =
      weierstrass_data_lift(tre.xp, tre.yp, std::sqrt(17.0) / 4.0, {0.5, M_PI / 2.0});
  if (!reduce_and_common_roots(wt.P, wt.Q).common_roots.empty()) {
    pass = false;
    detail += " trefoil-common-roots";
  }
  report(6, pass,
         pass ? "singular cases detected (ellipse roots, deltoid direction, trefoil clean)"
              : "failures:" + detail);
}

// ---------------------------------------------------------------- criterion 7
void criterion_null_identity() {
  bool pass = true;
  double worst = 0.0;
  std::string bad;
  for (const auto& entry : example_registry()) {
    BuiltJob job = build_job(entry.config);
    if (job.surface) {
      PolyExp residual = job.surface->null_residual();
      double scale = 1.0;
      for (const auto& p : job.surface->phi()) {
        double m = p.max_abs_coeff();
        scale = std::max(scale, m * m);
      }
      double rel = residual.max_abs_coeff() / scale;
      worst = std::max(worst, rel);
      if (rel > tol::kNullResidual) {
        pass = false;
        bad += " " + entry.name;
      }
    } else {
      // Fresnel-based surface: check the null identity numerically
      double lam = *entry.config.lambda;
      double kappa = (lam * lam + 1.0) / (2.0 * lam);
      double slope = (lam * lam - 1.0) / (2.0 * lam);
      for (double t : {0.3, 1.1, -0.7}) {
        Complex z2(t * t, 0.0);
        Complex p1 = std::cos(z2) + I * kappa * std::sin(z2);
        Complex p2 = std::sin(z2) - I * kappa * std::cos(z2);
        Complex sum = p1 * p1 + p2 * p2 + slope * slope;
        worst = std::max(worst, std::abs(sum));
        if (std::abs(sum) > tol::kNullResidual) pass = false;
      }
    }
  }
  report(7, pass,
         "null-curve identity over the registry, worst rel residual " + fmt(worst) + bad);
}

// ---------------------------------------------------------------- criterion 8
void criterion_oracles() {
  Timer timer;
  bool pass = true;
  double worst_quad = 0.0, worst_h = 0.0;
  std::vector<std::string> names = {"circular-a2", "enneper", "periodic-a5", "ellipse-closed",
                                    "lissajous"};
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> du(0.0, 2.0 * M_PI), dv(-0.4, 0.4);
  for (const auto& name : names) {
    BuiltJob job = build_job(find_example(name).config);
    const BjorlingSurface& s = *job.surface;
    double scale = 1.0;
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) {
        Complex z(-M_PI + 2.0 * M_PI * i / 11.0, -1.0 + 2.0 * j / 11.0);
        QuadratureResult q = bjorling_quadrature(s.core(), s.integrand(), s.t0(), z, {16, 12});
        Vec3 closed = s.at(z).position;
        scale = std::max(scale, closed.norm());
        worst_quad = std::max(worst_quad, (closed - q.position).norm() / scale);
      }
    int curvature_points = 0;
    while (curvature_points < 20) {
      Complex z(du(rng), dv(rng));
      try {
        worst_h = std::max(worst_h, mean_curvature_numeric(s, z, 1e-4));
        ++curvature_points;
      } catch (const SingularPointError&) {
      }
    }
  }
  pass = worst_quad <= tol::kQuadrature && worst_h <= tol::kMeanCurvature &&
         timer.seconds() < 60.0;
  report(8, pass,
         "5-surface oracle battery: quadrature " + fmt(worst_quad) + ", |H| " + fmt(worst_h) +
             ", " + fmt(timer.seconds()) + " s");
}

// ---------------------------------------------------------------- criterion 9
void criterion_interpolation() {
  bool pass = true;
  double worst_pos = 0.0, worst_angle = 0.0;
  std::string bad;
  for (const auto& entry : example_registry()) {
    BuiltJob job = build_job(entry.config);
    double u0 = entry.config.domain.u0, u1 = entry.config.domain.u1;
    double entry_pos = 0.0, entry_angle = 0.0;
    for (int i = 0; i < 64; ++i) {
      double t = u0 + (u1 - u0) * i / 63.0;
      SurfacePoint p = job.evaluator->at(Complex(t, 0.0));
      Vec3 c, n;
      if (job.surface) {
        auto cv = job.surface->core().eval(Complex(t, 0.0));
        c = {cv[0].real(), cv[1].real(), cv[2].real()};
        auto gv = job.surface->integrand().eval(Complex(t, 0.0));
        auto dv = job.surface->core_derivative().eval(Complex(t, 0.0));
        Vec3 g{gv[0].real(), gv[1].real(), gv[2].real()};
        Vec3 cp{dv[0].real(), dv[1].real(), dv[2].real()};
        n = cp.cross(g) * (1.0 / cp.dot(cp));
      } else {
        double lam = *entry.config.lambda;
        auto [C, S] = fresnel(Complex(t, 0.0));
        c = {C.real(), S.real(), t * (lam * lam - 1.0) / (2.0 * lam)};
        double k = 1.0 / (lam * lam + 1.0);
        n = {k * (1.0 - lam * lam) * std::cos(t * t),
             k * (1.0 - lam * lam) * std::sin(t * t), k * 2.0 * lam};
      }
      entry_pos = std::max(entry_pos, (p.position - c).norm() / (1.0 + c.norm()));
      if (p.conformal_factor > 0.0) {
        // angle through the cross product: acos of a rounded dot product
        // cannot resolve angles below sqrt(eps)
        Vec3 unit_n = n * (1.0 / n.norm());
        double sine = std::min(1.0, p.unit_normal.cross(unit_n).norm());
        double angle = std::asin(sine);
        if (p.unit_normal.dot(unit_n) < 0.0) angle = M_PI - angle;
        entry_angle = std::max(entry_angle, angle);
      }
    }
    worst_pos = std::max(worst_pos, entry_pos);
    worst_angle = std::max(worst_angle, entry_angle);
    if (entry_pos > tol::kAxisInterpolation || entry_angle > tol::kNormalAngle) {
      pass = false;
      bad += " " + entry.name;
    }
  }
  report(9, pass,
         "axis interpolation: position " + fmt(worst_pos) + ", normal angle " +
             fmt(worst_angle) + " rad" + bad);
}

// --------------------------------------------------------------- criterion 10
void criterion_determinism(const std::string& cli) {
  if (cli.empty()) {
    report(10, false, "no CLI binary provided");
    return;
  }
  fs::path a = fs::temp_directory_path() / "bjorling_accept_a";
  fs::path b = fs::temp_directory_path() / "bjorling_accept_b";
  fs::remove_all(a);
  fs::remove_all(b);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::string base = cli + " examples ellipse-singular --out ";
  int rc1 = std::system((base + a.string() + " >/dev/null 2>&1").c_str());
  int rc2 = std::system((base + b.string() + " >/dev/null 2>&1").c_str());
  bool pass = WEXITSTATUS(rc1) == 0 && WEXITSTATUS(rc2) == 0;
  std::string mesh_a = slurp(a / "ellipse-singular.obj");
  pass = pass && !mesh_a.empty() && mesh_a == slurp(b / "ellipse-singular.obj");
  pass = pass && slurp(a / "ellipse-singular.report.json") ==
                     slurp(b / "ellipse-singular.report.json");
  report(10, pass, "repeated generate runs are byte-identical (mesh + report)");
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  Timer total;

  criterion_golden_heights();
  criterion_closing_lambdas();
  criterion_circular_weierstrass();
  criterion_resultant_identity();
  criterion_degree_table();
  criterion_singular_detection();
  criterion_null_identity();
  criterion_oracles();
  criterion_interpolation();
  criterion_determinism(cli);

  std::printf("%d/10 criteria passed in %.1f s\n", 10 - g_failures, total.seconds());
  return g_failures == 0 ? 0 : 1;
}
