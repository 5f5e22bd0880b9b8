#pragma once

#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "bjorling/laurent.hpp"
#include "bjorling/parse.hpp"
#include "bjorling/surface.hpp"

namespace bjorling {

struct DegenerateSpinDirection : Error {
  PolyExp r;  // (xp, yp) = r(t) * (-sin(at+b), cos(at+b))
  DegenerateSpinDirection(PolyExp r_, const std::string& msg) : Error(msg), r(std::move(r_)) {}
};

// --- substitution w = e^{it/d} -------------------------------------------

// Minimal d such that every rate of p is i*(m/d) with integer m; requires all
// terms to be pure exponentials with exactly tagged rates.
inline int minimal_substitution_denominator(const PolyExp& p, int cap = 64) {
  long long l = 1;
  for (const auto& t : p.terms()) {
    if (t.power != 0)
      throw NotSubstitutable("term with polynomial factor t^" + std::to_string(t.power) +
                             " cannot be written in w = e^{it/d}");
    if (!t.itag)
      throw NotSubstitutable("term with untagged or non-imaginary rate (" +
                             pe_to_string(PolyExp({t})) + ") cannot be substituted");
    l = std::lcm(l, t.itag->den);
    if (l > cap)
      throw NotSubstitutable("no substitution denominator d <= " + std::to_string(cap) +
                             " exists");
  }
  return static_cast<int>(l);
}

// c e^{i (m/d) t} -> c w^m.
inline LaurentPoly substitute_unit_circle(const PolyExp& p, int d) {
  LaurentPoly out;
  for (const auto& t : p.terms()) {
    if (t.power != 0)
      throw NotSubstitutable("term with polynomial factor t^" + std::to_string(t.power) +
                             " cannot be written in w = e^{it/d}");
    if (!t.itag) {
      int suggestion = 0;
      try {
        suggestion = minimal_substitution_denominator(p);
      } catch (const NotSubstitutable&) {
      }
      throw NotSubstitutable("term with untagged or non-imaginary rate (" +
                                 pe_to_string(PolyExp({t})) + ") cannot be substituted",
                             suggestion);
    }
    long long num = t.itag->num * d;
    if (num % t.itag->den != 0) {
      int suggestion = 0;
      try {
        suggestion = minimal_substitution_denominator(p);
      } catch (const NotSubstitutable&) {
      }
      throw NotSubstitutable(
          "rate i*" + std::to_string(t.itag->num) + "/" + std::to_string(t.itag->den) +
              " is not an integer multiple of 1/" + std::to_string(d) +
              (suggestion ? "; minimal feasible d = " + std::to_string(suggestion) : ""),
          suggestion);
    }
    out.add(static_cast<int>(num / t.itag->den), t.coeff);
  }
  return out;
}

// --- reduction, common roots, degree --------------------------------------

inline constexpr double kRootMatchTol = 1e-8;
inline constexpr double kRootClusterRadius = 1e-6;

struct ReducedPair {
  std::vector<Complex> p, q;          // cleared, common roots removed
  std::vector<Complex> common_roots;  // in C^*, with multiplicity
};

inline std::vector<std::pair<Complex, int>> cluster_roots(std::vector<Complex> roots,
                                                          double radius = kRootClusterRadius) {
  std::vector<std::pair<Complex, int>> clusters;
  for (Complex r : roots) {
    bool placed = false;
    for (auto& [center, count] : clusters) {
      if (std::abs(r - center) <= radius * std::max(1.0, std::abs(center))) {
        center = (center * static_cast<double>(count) + r) / static_cast<double>(count + 1);
        ++count;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.emplace_back(r, 1);
  }
  return clusters;
}

// Clears monomial factors and removes matched common roots (approximate GCD
// by companion-matrix roots, matched at 1e-8 relative to root magnitude).
// Eigenvalues of an order-m root scatter like eps^{1/m}, but their cluster
// mean is accurate, so multiplicities are clustered before matching.
inline ReducedPair reduce_and_common_roots(const LaurentPoly& pl, const LaurentPoly& ql) {
  ClearedPoly pc = clear_monomial(pl);
  ClearedPoly qc = clear_monomial(ql);
  ReducedPair out;
  out.p = pc.coeffs;
  out.q = qc.coeffs;
  if (poly_degree(pc) < 1 || poly_degree(qc) < 1) return out;

  auto cp = cluster_roots(poly_roots(pc));
  auto cq = cluster_roots(poly_roots(qc));
  std::vector<int> remaining(cq.size());
  for (std::size_t j = 0; j < cq.size(); ++j) remaining[j] = cq[j].second;

  for (const auto& [r, mult_p] : cp) {
    int best = -1;
    double best_d = kRootMatchTol * std::max(1.0, std::abs(r));
    for (std::size_t j = 0; j < cq.size(); ++j) {
      if (remaining[j] == 0) continue;
      double dist = std::abs(r - cq[j].first);
      if (dist <= best_d) {
        best_d = dist;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) continue;
    Complex mid = 0.5 * (r + cq[best].first);
    int shared = std::min(mult_p, remaining[best]);
    remaining[best] -= shared;
    for (int k = 0; k < shared; ++k) {
      out.common_roots.push_back(mid);
      out.p = deflate(out.p, mid);
      out.q = deflate(out.q, mid);
    }
  }
  return out;
}

// Degree of G as a rational map on the sphere: clear monomials from num and
// den, remove common roots, and account for the leftover monomial shift.
inline int gauss_degree(const RationalMap& g) {
  ClearedPoly nc = clear_monomial(g.num);
  ClearedPoly dc = clear_monomial(g.den);
  if (nc.coeffs.empty() || dc.coeffs.empty()) return 0;
  ReducedPair red = reduce_and_common_roots(g.num, g.den);
  int s = nc.shift - dc.shift;
  int deg_n = static_cast<int>(red.p.size()) - 1 + std::max(s, 0);
  int deg_d = static_cast<int>(red.q.size()) - 1 + std::max(-s, 0);
  return std::max(deg_n, deg_d);
}

// --- Weierstrass data ------------------------------------------------------

struct WeierstrassData {
  RationalMap gauss;  // G(w)
  RationalMap dh;     // dh = dh.eval(w) dw
  int d = 1;          // substitution denominator, w = e^{it/d}
  LaurentPoly P, Q;   // certificate pair with dh proportional to P*Q (lift
                      // route) or the reduced Gauss map pair otherwise
  bool pq_from_lift = false;
};

namespace detail {

inline void check_weierstrass_consistency(const WeierstrassData& w,
                                          const std::array<LaurentPoly, 3>& phi_hat) {
  for (int i = 0; i < 32; ++i) {
    double theta = 2.0 * M_PI * i / 32.0 + 0.37;
    Complex ww = std::polar(1.0, theta);
    Complex p1 = phi_hat[0].eval(ww);
    Complex p2 = phi_hat[1].eval(ww);
    Complex p3 = phi_hat[2].eval(ww);
    Complex g = w.gauss.eval(ww);
    double scale = std::abs(p1) + std::abs(p2) + std::abs(p3) + 1e-30;
    if (std::abs(g * (p1 - Complex(0.0, 1.0) * p2) - p3) > 1e-9 * scale ||
        std::abs(g * p3 + (p1 + Complex(0.0, 1.0) * p2)) > 1e-9 * scale)
      throw Error("extracted Gauss map fails the Weierstrass consistency identity");
  }
}

}  // namespace detail

// Generic extraction from the holomorphic derivative triple:
// G = phi3/(phi1 - i phi2), dh = phi3(w) * d/(i w) dw.
inline WeierstrassData weierstrass_data(const BjorlingSurface& surface, int d_cap = 64) {
  auto phi = surface.phi();
  long long l = 1;
  for (const auto& comp : phi)
    l = std::lcm(l, static_cast<long long>(minimal_substitution_denominator(comp, d_cap)));
  if (l > d_cap)
    throw NotSubstitutable("no common substitution denominator d <= " + std::to_string(d_cap));
  int d = static_cast<int>(l);

  std::array<LaurentPoly, 3> phi_hat = {substitute_unit_circle(phi[0], d),
                                        substitute_unit_circle(phi[1], d),
                                        substitute_unit_circle(phi[2], d)};

  WeierstrassData w;
  w.d = d;
  w.gauss.num = phi_hat[2];
  w.gauss.den = phi_hat[0] - phi_hat[1].scaled(Complex(0.0, 1.0));
  w.dh.num = phi_hat[2].scaled(Complex(0.0, -static_cast<double>(d))).shifted(-1);
  w.dh.den = LaurentPoly::monomial(Complex(1.0, 0.0), 0);

  ReducedPair red = reduce_and_common_roots(w.gauss.num, w.gauss.den);
  for (std::size_t k = 0; k < red.p.size(); ++k)
    w.P.add(static_cast<int>(k), red.p[k]);
  for (std::size_t k = 0; k < red.q.size(); ++k)
    w.Q.add(static_cast<int>(k), red.q[k]);
  w.pq_from_lift = false;

  detail::check_weierstrass_consistency(w, phi_hat);
  return w;
}

// Lift-route extraction with the factor pair
//   P(w) = [x' + i y']^(w) + lambda e^{ib} w^{a d}
//   Q(w) = e^{ib} w^{a d} [x' - i y']^(w) - lambda
// so that G = P/Q and dh = (i d e^{-ib} / (2 lambda)) w^{-a d - 1} P Q dw.
inline WeierstrassData weierstrass_data_lift(const PolyExp& xp, const PolyExp& yp,
                                             double lambda, const SpinSpec& spin,
                                             int d_cap = 64) {
  if (lambda == 0.0) throw ZeroLambda("lambda must be nonzero");
  auto a_tag = exact_rational(spin.a);
  if (!a_tag)
    throw NotSubstitutable("spin speed a is not an exact rational; no substitution exists");

  PolyExp xpiy = xp + yp.scaled(Complex(0.0, 1.0));
  PolyExp xmiy = xp + yp.scaled(Complex(0.0, -1.0));
  long long l = std::lcm(static_cast<long long>(minimal_substitution_denominator(xpiy, d_cap)),
                         a_tag->den);
  if (l > d_cap)
    throw NotSubstitutable("no common substitution denominator d <= " + std::to_string(d_cap));
  int d = static_cast<int>(l);
  int ad = static_cast<int>(a_tag->num * (d / a_tag->den));

  Complex eib = std::polar(1.0, spin.b);
  LaurentPoly p_core = substitute_unit_circle(xpiy, d);
  p_core.add(ad, lambda * eib);
  LaurentPoly q_core = substitute_unit_circle(xmiy, d).scaled(eib).shifted(ad);
  q_core.add(0, Complex(-lambda, 0.0));

  WeierstrassData w;
  w.d = d;
  w.gauss.num = p_core;
  w.gauss.den = q_core;
  Complex dh_scale = Complex(0.0, static_cast<double>(d)) * std::conj(eib) / (2.0 * lambda);
  w.dh.num = (p_core * q_core).scaled(dh_scale).shifted(-ad - 1);
  w.dh.den = LaurentPoly::monomial(Complex(1.0, 0.0), 0);
  w.P = p_core;
  w.Q = q_core;
  w.pq_from_lift = true;
  return w;
}

// --- regularity -------------------------------------------------------------

struct RegularityReport {
  bool is_regular = false;
  std::vector<Complex> common_roots;       // of the certificate pair, in C^*
  int gauss_degree = 0;
  Complex resultant{0.0, 0.0};             // monic-normalized resultant of P, Q
  std::vector<Complex> metric_zero_locus;  // zeros of the conformal factor in C^*
  int d = 1;
};

// Zeros of dh in C^* must be matched, with multiplicity, by zeros or poles of
// G; together with a common-root-free certificate pair this certifies a
// regular surface.
inline RegularityReport regularity_report(const WeierstrassData& w) {
  RegularityReport rep;
  rep.d = w.d;
  rep.gauss_degree = gauss_degree(w.gauss);
  rep.resultant = resultant_monic(w.P, w.Q);

  ReducedPair pq = reduce_and_common_roots(w.P, w.Q);
  rep.common_roots = pq.common_roots;

  ReducedPair g = reduce_and_common_roots(w.gauss.num, w.gauss.den);
  std::vector<Complex> g_points = poly_roots(g.p);  // zeros of G
  {
    std::vector<Complex> poles = poly_roots(g.q);
    g_points.insert(g_points.end(), poles.begin(), poles.end());
  }
  auto g_clusters = cluster_roots(g_points);

  ClearedPoly dh_num = clear_monomial(w.dh.num);
  bool matched_all = true;
  if (poly_degree(dh_num) >= 1) {
    auto dh_clusters = cluster_roots(poly_roots(dh_num));
    for (const auto& [root, mult] : dh_clusters) {
      int g_order = 0;
      for (const auto& [groot, gmult] : g_clusters)
        if (std::abs(root - groot) <= kRootClusterRadius * std::max(1.0, std::abs(root)))
          g_order += gmult;
      if (g_order != mult) {
        matched_all = false;
        if (mult > g_order) rep.metric_zero_locus.push_back(root);
      }
    }
  }
  for (Complex r : rep.common_roots) rep.metric_zero_locus.push_back(r);

  rep.is_regular = rep.common_roots.empty() && matched_all;
  return rep;
}

// --- singular parameter search ----------------------------------------------

struct SearchBox {
  double re_min = -2.0, re_max = 2.0, im_min = -2.0, im_max = 2.0;
  bool contains(Complex w) const {
    return w.real() >= re_min && w.real() <= re_max && w.imag() >= im_min && w.imag() <= im_max;
  }
};

// Simultaneous zeros of the lift certificate pair as a function of lambda:
// solves -e^{-i(aw+b)}(x'+iy') = e^{i(aw+b)}(x'-iy') and reports the real
// lambda values with their w.
inline std::vector<std::pair<Complex, double>> singular_lambda_locus(const PolyExp& xp,
                                                                     const PolyExp& yp,
                                                                     const SpinSpec& spin,
                                                                     const SearchBox& box,
                                                                     int d_cap = 64) {
  PolyExp cosab = PolyExp::cosw(spin.a, spin.b);
  PolyExp sinab = PolyExp::sinw(spin.a, spin.b);
  PolyExp aligned = cosab * xp + sinab * yp;
  double scale = std::max(1.0, xp.max_abs_coeff() + yp.max_abs_coeff());
  if (effectively_zero(aligned, scale)) {
    PolyExp r = ((-sinab) * xp + cosab * yp).pruned(1e-12 * scale);
    throw DegenerateSpinDirection(
        r, "tangent is everywhere aligned with the spin direction: (x', y') = r(t) * "
           "(-sin(at+b), cos(at+b)) with r = " +
               pe_to_string(r));
  }

  auto a_tag = exact_rational(spin.a);
  if (!a_tag)
    throw NotSubstitutable("spin speed a is not an exact rational; no substitution exists");
  PolyExp xpiy = xp + yp.scaled(Complex(0.0, 1.0));
  PolyExp xmiy = xp + yp.scaled(Complex(0.0, -1.0));
  long long l = std::lcm(static_cast<long long>(minimal_substitution_denominator(xpiy, d_cap)),
                         a_tag->den);
  int d = static_cast<int>(l);
  int ad = static_cast<int>(a_tag->num * (d / a_tag->den));

  Complex eib = std::polar(1.0, spin.b);
  LaurentPoly f = substitute_unit_circle(xpiy, d).scaled(-std::conj(eib)).shifted(-ad);
  LaurentPoly g = substitute_unit_circle(xmiy, d).scaled(eib).shifted(ad);

  std::vector<std::pair<Complex, double>> out;
  ClearedPoly h = clear_monomial(f - g);
  if (poly_degree(h) < 1) return out;
  for (Complex root : poly_roots(h)) {
    if (std::abs(root) < 1e-9 || !box.contains(root)) continue;
    Complex lam = g.eval(root);
    if (std::abs(lam.imag()) <= 1e-8 * (1.0 + std::abs(lam)))
      out.emplace_back(root, lam.real());
  }
  return out;
}

}  // namespace bjorling
