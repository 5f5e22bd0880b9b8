#pragma once

#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bjorling/curves.hpp"
#include "bjorling/meshio.hpp"
#include "bjorling/parse.hpp"
#include "bjorling/weierstrass.hpp"

namespace bjorling {

using Json = nlohmann::ordered_json;

struct JobConfig {
  std::string method;  // lift | quaternion | clothoid
  std::string curve_name;
  std::map<std::string, double> params;
  std::string inline_x, inline_y;  // lift only, positions as expressions
  std::optional<double> lambda;
  bool closing_lambda_requested = false;
  SpinSpec spin;
  double t0 = 0.0;
  Vec3 offset{};
  GridDomain domain{0.0, 2.0 * M_PI, -0.5, 0.5, 96, 17};
  std::string mesh_path, report_path;
};

namespace detail {

// Numbers in configs may be JSON numbers or constant expressions such as
// "1/2" or "pi/2"; rational strings keep half-integer spins exact.
inline double config_number(const Json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    PolyExp p = pe_parse(v.get<std::string>());
    if (p.is_zero()) return 0.0;
    if (p.terms().size() == 1 && p.terms()[0].power == 0 &&
        p.terms()[0].rate == Complex(0.0, 0.0) && p.terms()[0].coeff.imag() == 0.0)
      return p.terms()[0].coeff.real();
    throw Error(what + " must be a real constant");
  }
  throw Error(what + " must be a number or constant expression string");
}

}  // namespace detail

inline JobConfig job_config_from_json(const Json& j) {
  JobConfig cfg;
  if (!j.contains("method") || !j["method"].is_string())
    throw Error("config requires a \"method\" of lift, quaternion or clothoid");
  cfg.method = j["method"].get<std::string>();
  if (cfg.method != "lift" && cfg.method != "quaternion" && cfg.method != "clothoid")
    throw Error("unknown method '" + cfg.method + "'");

  if (j.contains("curve")) {
    const Json& c = j["curve"];
    if (c.contains("name")) cfg.curve_name = c["name"].get<std::string>();
    if (c.contains("params"))
      for (auto it = c["params"].begin(); it != c["params"].end(); ++it)
        cfg.params[it.key()] = detail::config_number(it.value(), "curve parameter " + it.key());
    if (c.contains("x")) cfg.inline_x = c["x"].get<std::string>();
    if (c.contains("y")) cfg.inline_y = c["y"].get<std::string>();
  }

  if (j.contains("lambda")) {
    if (j["lambda"].is_string() && j["lambda"].get<std::string>() == "closing")
      cfg.closing_lambda_requested = true;
    else
      cfg.lambda = detail::config_number(j["lambda"], "lambda");
  }

  if (j.contains("spin")) {
    if (j["spin"].contains("a")) cfg.spin.a = detail::config_number(j["spin"]["a"], "spin.a");
    if (j["spin"].contains("b")) cfg.spin.b = detail::config_number(j["spin"]["b"], "spin.b");
  }
  if (j.contains("t0")) cfg.t0 = detail::config_number(j["t0"], "t0");
  if (j.contains("offset")) {
    const Json& o = j["offset"];
    if (!o.is_array() || o.size() != 3) throw Error("offset must be a 3-vector");
    cfg.offset = {o[0].get<double>(), o[1].get<double>(), o[2].get<double>()};
  }
  if (j.contains("domain")) {
    const Json& d = j["domain"];
    auto num = [&](const char* k, double fallback) {
      return d.contains(k) ? detail::config_number(d[k], k) : fallback;
    };
    cfg.domain.u0 = num("u0", cfg.domain.u0);
    cfg.domain.u1 = num("u1", cfg.domain.u1);
    cfg.domain.v0 = num("v0", cfg.domain.v0);
    cfg.domain.v1 = num("v1", cfg.domain.v1);
    if (d.contains("nu")) cfg.domain.nu = d["nu"].get<int>();
    if (d.contains("nv")) cfg.domain.nv = d["nv"].get<int>();
  }
  if (j.contains("outputs")) {
    const Json& o = j["outputs"];
    if (o.contains("mesh_path")) cfg.mesh_path = o["mesh_path"].get<std::string>();
    if (o.contains("report_path")) cfg.report_path = o["report_path"].get<std::string>();
  }
  return cfg;
}

// A constructed job: evaluator for meshing, the closed-form surface when the
// method produces one, and Weierstrass data when the spin/curve rates admit
// the unit-circle substitution.
struct BuiltJob {
  std::shared_ptr<SurfaceEvaluator> evaluator;
  std::shared_ptr<BjorlingSurface> surface;
  std::optional<WeierstrassData> wdata;
  std::string analysis_note;
  double lambda_used = 0.0;
  GridDomain domain;
};

inline BuiltJob build_job(const JobConfig& cfg) {
  BuiltJob out;
  out.domain = cfg.domain;

  if (cfg.method == "clothoid") {
    double lam = cfg.lambda ? *cfg.lambda : 1.4;
    auto clothoid = std::make_shared<ClothoidSurface>(lam);
    out.analysis_note = "closed-form data: G = " + clothoid->gauss_map_string() +
                        "; dh = " + clothoid->dh_string();
    out.lambda_used = lam;
    out.evaluator = clothoid;
    return out;
  }

  if (cfg.method == "quaternion") {
    QuaternionPreset preset = catalog_quaternion(cfg.curve_name, cfg.params);
    FrameCurve frame = phi_of_quaternion(preset.q);
    auto surface =
        std::make_shared<BjorlingSurface>(build_surface(frame, cfg.spin, cfg.t0, cfg.offset));
    try {
      out.wdata = weierstrass_data(*surface);
    } catch (const NotSubstitutable& e) {
      out.analysis_note = e.what();
    }
    out.surface = surface;
    out.evaluator = surface;
    return out;
  }

  // lift
  PolyExp xp, yp;
  double t0n = 0.0, t1n = 2.0 * M_PI;
  if (!cfg.curve_name.empty()) {
    PlaneCurveSpec spec = catalog_plane(cfg.curve_name, cfg.params);
    xp = spec.xp;
    yp = spec.yp;
    t0n = spec.t0;
    t1n = spec.t1;
  } else if (!cfg.inline_x.empty() && !cfg.inline_y.empty()) {
    xp = pe_parse(cfg.inline_x).derivative();
    yp = pe_parse(cfg.inline_y).derivative();
  } else {
    throw MissingParam("lift method requires a curve name or inline x/y expressions");
  }

  double lam;
  if (cfg.closing_lambda_requested)
    lam = closing_lambda(xp, yp, t0n, t1n);
  else if (cfg.lambda)
    lam = *cfg.lambda;
  else
    throw MissingParam("lift method requires \"lambda\" (number or \"closing\")");

  LiftResult lift = lift_plane_curve(xp, yp, lam);
  auto surface =
      std::make_shared<BjorlingSurface>(build_surface(lift.frame, cfg.spin, cfg.t0, cfg.offset));
  try {
    out.wdata = weierstrass_data_lift(xp, yp, lam, cfg.spin);
  } catch (const NotSubstitutable& e) {
    out.analysis_note = e.what();
  }
  out.surface = surface;
  out.evaluator = surface;
  out.lambda_used = lam;
  return out;
}

inline Json report_json(const RegularityReport& rep) {
  Json j;
  j["regular"] = rep.is_regular;
  j["degree"] = rep.gauss_degree;
  j["resultant"] = Json::array({rep.resultant.real(), rep.resultant.imag()});
  Json roots = Json::array();
  for (Complex r : rep.common_roots) roots.push_back(Json::array({r.real(), r.imag()}));
  j["common_roots"] = roots;
  j["d"] = rep.d;
  return j;
}

inline Json analysis_json(const BuiltJob& job) {
  if (job.wdata) return report_json(regularity_report(*job.wdata));
  Json j;
  j["analysis"] = "unavailable";
  j["reason"] = job.analysis_note;
  return j;
}

// --- built-in example registry ----------------------------------------------

struct ExampleEntry {
  std::string name;
  std::string description;
  JobConfig config;
};

namespace detail {

inline JobConfig quaternion_job(const std::string& curve, std::map<std::string, double> params,
                                double a, double b, GridDomain dom) {
  JobConfig cfg;
  cfg.method = "quaternion";
  cfg.curve_name = curve;
  cfg.params = std::move(params);
  cfg.spin = {a, b};
  cfg.domain = dom;
  return cfg;
}

inline JobConfig lift_job(const std::string& curve, std::map<std::string, double> params,
                          std::optional<double> lambda, double a, double b, GridDomain dom) {
  JobConfig cfg;
  cfg.method = "lift";
  cfg.curve_name = curve;
  cfg.params = std::move(params);
  if (lambda)
    cfg.lambda = lambda;
  else
    cfg.closing_lambda_requested = true;
  cfg.spin = {a, b};
  cfg.domain = dom;
  return cfg;
}

}  // namespace detail

inline const std::vector<ExampleEntry>& example_registry() {
  static const std::vector<ExampleEntry> entries = [] {
    using detail::lift_job;
    using detail::quaternion_job;
    const double pi = M_PI;
    GridDomain closed{0.0, 2.0 * pi, -0.5, 0.5, 96, 17};
    GridDomain doubled{0.0, 4.0 * pi, -0.5, 0.5, 128, 17};
    GridDomain spiral{-6.0, 6.0, -0.3, 0.3, 128, 13};

    std::vector<ExampleEntry> v;
    auto add = [&](const std::string& name, const std::string& desc, JobConfig cfg) {
      v.push_back({name, desc, std::move(cfg)});
    };

    add("circular-a2", "circular core, normal spinning at a=2",
        quaternion_job("great_circle", {}, 2.0, 0.0, closed));
    add("circular-a7over2", "circular core, half-integer spin a=7/2 (one-sided)",
        quaternion_job("great_circle", {}, 3.5, 0.0, doubled));
    add("enneper", "standard Enneper configuration (A=-1/2, B=3/2)",
        quaternion_job("torus_knot", {{"A", -0.5}, {"B", 1.5}}, 0.0, 0.0, closed));
    add("enneper-rotated", "Enneper core with normal rotated 90 degrees",
        quaternion_job("torus_knot", {{"A", -0.5}, {"B", 1.5}}, 0.0, pi / 2.0, closed));
    add("enneper-a20", "Enneper core with fast spin a=20",
        quaternion_job("torus_knot", {{"A", -0.5}, {"B", 1.5}}, 20.0, 0.0,
                       GridDomain{0.0, 2.0 * pi, -0.25, 0.25, 160, 17}));
    add("planar-enneper", "planar Enneper, 3-fold symmetry (A=1/2, B=7/2)",
        quaternion_job("torus_knot", {{"A", 0.5}, {"B", 3.5}}, 0.0, 0.0, closed));
    add("planar-enneper-rotated", "planar Enneper, rotated normal",
        quaternion_job("torus_knot", {{"A", 0.5}, {"B", 3.5}}, 0.0, pi / 2.0, closed));
    add("planar-enneper-a50", "planar Enneper core with fast spin a=50",
        quaternion_job("torus_knot", {{"A", 0.5}, {"B", 3.5}}, 50.0, 0.0,
                       GridDomain{0.0, 2.0 * pi, -0.12, 0.12, 256, 13}));
    add("periodic-scherk", "periodic surface from a product of great circles (a=0, b=pi/2)",
        quaternion_job("circle_product", {}, 0.0, pi / 2.0, doubled));
    add("periodic-a5", "periodic surface from a product of great circles, a=5",
        quaternion_job("circle_product", {}, 5.0, 0.0, doubled));
    add("helix-a0", "helix lift of the circle, lambda=2, a=0",
        lift_job("circle", {}, 2.0, 0.0, 0.0, doubled));
    add("helix-a10", "helix lift of the circle, lambda=2, a=10",
        lift_job("circle", {}, 2.0, 10.0, 0.0, doubled));
    add("ellipse-closed", "closed lift of the (1,3) ellipse, lambda=sqrt(5), a=2",
        lift_job("ellipse", {}, std::nullopt, 2.0, 0.0, closed));
    add("ellipse-singular", "singular periodic lift of the ellipse, lambda=1, a=2",
        lift_job("ellipse", {}, 1.0, 2.0, 0.0,
                 GridDomain{0.0, 2.0 * pi, -0.55, 0.55, 96, 21}));
    add("lissajous", "(1,2)-Lissajous lift, lambda=2, a=1",
        lift_job("lissajous", {{"xi", 1.0}, {"eta", 2.0}}, 2.0, 1.0, 0.0, closed));
    add("lissajous-rotated", "(1,2)-Lissajous lift with b=pi/2",
        lift_job("lissajous", {{"xi", 1.0}, {"eta", 2.0}}, 2.0, 1.0, pi / 2.0, closed));
    add("cycloid-a2", "order-2 cycloid lift, lambda=6, a=2",
        lift_job("cycloid", {{"R", 2.0}, {"r", 1.0}, {"s", 2.0}}, 6.0, 2.0, 0.0, closed));
    add("cycloid-closed", "closed order-2 cycloid lift, a=20",
        lift_job("cycloid", {{"R", 2.0}, {"r", 1.0}, {"s", 2.0}}, std::nullopt, 20.0, 0.0,
                 GridDomain{0.0, 2.0 * pi, -0.2, 0.2, 200, 13}));
    add("deltoid-a20", "closed deltoid lift, a=20",
        lift_job("deltoid", {}, std::nullopt, 20.0, 0.0,
                 GridDomain{0.0, 2.0 * pi, -0.2, 0.2, 200, 13}));
    add("deltoid-mobius", "deltoid lift with a=-1/2, b=pi/2: singular one-sided surface",
        lift_job("deltoid", {}, std::nullopt, -0.5, pi / 2.0, doubled));
    add("trefoil-mobius", "knotted one-sided surface over the trefoil curve, xi=1/4",
        lift_job("trefoil", {{"xi", 0.25}}, std::nullopt, 0.5, pi / 2.0, doubled));
    add("trefoil-a30", "trefoil lift with fast spin a=30",
        lift_job("trefoil", {{"xi", 0.25}}, std::nullopt, 30.0, 0.0,
                 GridDomain{0.0, 2.0 * pi, -0.15, 0.15, 256, 13}));
    add("log-spiral", "logarithmic spiral lift, rho=e, lambda=1",
        lift_job("log_spiral", {{"rho", M_E}}, 1.0, 2.0, 0.0, spiral));
    add("archimedean", "Archimedean spiral lift, lambda=2",
        lift_job("archimedean", {}, 2.0, 2.0, 0.0, spiral));
    add("circle-limit", "spiral limiting on a circle, lambda=1, a=3, b=pi/2",
        lift_job("circle_spiral", {{"rho", M_E}}, 1.0, 3.0, pi / 2.0, spiral));
    {
      JobConfig clothoid;
      clothoid.method = "clothoid";
      clothoid.lambda = 1.4;
      clothoid.domain = GridDomain{-2.5, 2.5, -0.5, 0.5, 128, 17};
      add("clothoid", "surface over the clothoid, lambda=1.4", clothoid);
    }
    return v;
  }();
  return entries;
}

inline const ExampleEntry& find_example(const std::string& name) {
  for (const auto& e : example_registry())
    if (e.name == name) return e;
  throw UnknownExample("no example named '" + name + "'");
}

}  // namespace bjorling
