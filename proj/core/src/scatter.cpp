#include "fewbody/scatter.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "fewbody/extrapolate.hpp"

namespace fewbody {

namespace {

struct Tail {
  long double r1, u1, r2, u2;
  int nodes;
};

void check(const GaussianPotential& pot, const Integrator& in) {
  if (!(pot.r0 > 0.0) || !std::isfinite(pot.v0)) throw std::invalid_argument("GaussianPotential: need r0 > 0");
  if (in.steps_per_r0 < 10 || in.match_radius_r0 < 8.0) throw std::invalid_argument("Integrator: settings too coarse");
}

// Numerov for u'' = (V - k^2) u from u(0) = 0; returns the last two samples.
// The recurrence runs in long double: small scattering lengths come from a
// slope difference that otherwise loses ~3 digits over the grid.
Tail integrate(const GaussianPotential& pot, double k2, const Integrator& in) {
  check(pot, in);
  using real = long double;
  const real h = static_cast<real>(pot.r0) / in.steps_per_r0;
  const int n = static_cast<int>(std::lround(in.match_radius_r0 * in.steps_per_r0));
  const real c = h * h / 12;
  const real x0 = 1 / static_cast<real>(pot.r0);
  auto f = [&](int i) {
    const real x = i * h * x0;
    return 1 - c * (static_cast<real>(pot.v0) * std::exp(-x * x / 2) - k2);
  };

  real u_prev = 0, u = h;
  real f_prev = f(0), f_cur = f(1);
  int nodes = 0;
  for (int i = 1; i < n; ++i) {
    const real f_next = f(i + 1);
    const real u_next = ((12 - 10 * f_cur) * u - f_prev * u_prev) / f_next;
    if (u_next == 0 || (u_next < 0) != (u < 0)) ++nodes;
    u_prev = u;
    u = u_next;
    f_prev = f_cur;
    f_cur = f_next;
    if (std::abs(u) > 1e200L) {
      u *= 1e-200L;
      u_prev *= 1e-200L;
    }
  }
  return {(n - 1) * h, u_prev, n * h, u, nodes};
}

// Beyond the range u is linear, so the two-point slope is exact.
double asymptote_intercept(const Tail& t) {
  return static_cast<double>(t.r2 - t.u2 * (t.r2 - t.r1) / (t.u2 - t.u1));
}

}  // namespace

double GaussianPotential::operator()(double r) const {
  const double x = r / r0;
  return v0 * std::exp(-0.5 * x * x);
}

bool has_bound_state(const GaussianPotential& pot, const Integrator& in) {
  if (pot.v0 >= 0.0) return false;
  const Tail t = integrate(pot, 0.0, in);
  if (t.nodes > 0) return true;
  // u = C (r - a) outside the range: a node beyond r_match if a > r_match.
  return t.u2 != t.u1 && asymptote_intercept(t) > t.r2;
}

double zero_energy_a(const GaussianPotential& pot, const Integrator& in) {
  if (pot.v0 == 0.0) {
    check(pot, in);
    return 0.0;
  }
  const Tail t = integrate(pot, 0.0, in);
  if (t.u2 == t.u1 || !std::isfinite(t.u1) || !std::isfinite(t.u2))
    throw std::runtime_error("zero_energy_a: asymptote not reached");
  const double a = asymptote_intercept(t);
  if (t.nodes > 0 || (pot.v0 < 0.0 && a > t.r2)) throw std::domain_error("zero_energy_a: potential binds a state");
  return a;
}

double born_scattering_length(const GaussianPotential& pot) {
  return pot.v0 * pot.r0 * pot.r0 * pot.r0 * std::sqrt(std::numbers::pi / 2.0);
}

double born_phase_shift(const GaussianPotential& pot, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("born_phase_shift: k must be positive");
  const double kr = k * pot.r0;
  return -pot.v0 * pot.r0 * std::sqrt(std::numbers::pi / 2.0) * (-std::expm1(-2.0 * kr * kr)) / (2.0 * k);
}

ScatteringResult phase_shift(const GaussianPotential& pot, double k, const Integrator& in) {
  if (!(k > 0.0)) throw std::invalid_argument("phase_shift: k must be positive");
  if (k * pot.r0 * in.match_radius_r0 < 1e-6) throw std::domain_error("phase_shift: k * r_match too small to match");
  if (pot.v0 == 0.0) return {k, 0.0, 0.0};
  const Tail t = integrate(pot, k * k, in);
  const long double num = t.u1 * std::sin(k * t.r2) - t.u2 * std::sin(k * t.r1);
  const long double den = t.u2 * std::cos(k * t.r1) - t.u1 * std::cos(k * t.r2);
  const double tan_delta = static_cast<double>(num / den);
  return {k, std::atan(tan_delta), -tan_delta / k};
}

std::vector<ScatteringResult> phase_shifts(const GaussianPotential& pot, const std::vector<double>& ks,
                                           const Integrator& in) {
  std::vector<ScatteringResult> out;
  out.reserve(ks.size());
  for (double k : ks) out.push_back(phase_shift(pot, k, in));
  return out;
}

std::vector<double> default_k_grid(double r0, int points) {
  if (points < 5) throw std::invalid_argument("default_k_grid: need at least 5 points");
  std::vector<double> ks;
  for (int i = 1; i <= points; ++i) ks.push_back(0.2 / r0 * i / points);
  return ks;
}

EffectiveRange fit_effective_range(const GaussianPotential& pot, const std::vector<double>& ks, const Integrator& in) {
  if (ks.size() < 5) throw std::invalid_argument("fit_effective_range: need at least 5 k points");
  double kmin = std::numeric_limits<double>::infinity(), kmax = 0.0;
  for (double k : ks) {
    if (!(k > 0.0) || k * pot.r0 > 0.2 + 1e-12)
      throw std::invalid_argument("fit_effective_range: k must satisfy 0 < k r0 <= 0.2");
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
  }
  if ((kmax * kmax - kmin * kmin) < 0.1 * kmax * kmax)
    throw std::invalid_argument("fit_effective_range: k grid too narrow, fit ill-conditioned");

  std::vector<FitPoint> pts;
  for (const auto& s : phase_shifts(pot, ks, in)) pts.emplace_back(s.k * s.k, s.a_f);
  const AsymptoticFit fit = fit_power_model(pts, {0.0, 1.0, 2.0});
  EffectiveRange er;
  er.a0 = fit.params[0];
  er.volume = 2.0 * fit.params[1];
  er.r_eff = er.a0 == 0.0 ? std::numeric_limits<double>::infinity() : er.volume / (er.a0 * er.a0);
  return er;
}

double EffectiveRange::a_f(double k) const {
  if (a0 == 0.0) return 0.0;
  return a0 / (1.0 - 0.5 * volume * k * k / a0);
}

double bound_state_threshold(double r0, const Integrator& in) {
  double lo = 0.0;           // no bound state
  double hi = -1.0 / (r0 * r0);  // grows until a bound state appears
  while (!has_bound_state({hi, r0}, in)) {
    lo = hi;
    hi *= 2.0;
    if (hi < -1e4 / (r0 * r0)) throw std::runtime_error("bound_state_threshold: no bound state found");
  }
  for (int i = 0; i < 200 && std::abs(hi - lo) > 1e-15 * std::abs(hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (has_bound_state({mid, r0}, in) ? hi : lo) = mid;
  }
  return lo;
}

GaussianPotential tune_depth(double a_target, double r0, const Integrator& in) {
  if (!(r0 > 0.0) || !std::isfinite(a_target)) throw std::invalid_argument("tune_depth: need r0 > 0 and finite target");
  if (a_target == 0.0) return {0.0, r0};

  auto f = [&](double v) { return zero_energy_a({v, r0}, in) - a_target; };
  double lo, hi;
  if (a_target < 0.0) {
    lo = bound_state_threshold(r0, in);
    hi = 0.0;
    if (f(lo) > 0.0) throw std::domain_error("tune_depth: target unreachable without a bound state");
  } else {
    lo = 0.0;
    hi = 1.0 / (r0 * r0);
    while (f(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi * r0 * r0 > 1e3) throw std::domain_error("tune_depth: target beyond reachable repulsive range");
    }
  }
  std::uintmax_t iters = 300;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  const double v = std::abs(f(a)) < std::abs(f(b)) ? a : b;
  GaussianPotential pot{v, r0};
  const double err = std::abs(zero_energy_a(pot, in) - a_target);
  if (err > 1e-10 * std::max(std::abs(a_target), r0)) throw std::runtime_error("tune_depth: bisection did not converge");
  return pot;
}

}  // namespace fewbody
