#pragma once

#include <vector>

namespace fewbody {

// V(r) = V0 exp(-(r/r0)^2 / 2). Units with hbar = m_A = 1: lengths in any
// fixed unit, v0 in inverse length squared (m_A V0 / hbar^2), so the s-wave
// radial equation reads u'' = (V(r) - k^2) u.
struct GaussianPotential {
  double v0 = 0.0;
  double r0 = 1.0;

  double operator()(double r) const;
};

struct Integrator {
  int steps_per_r0 = 200;
  double match_radius_r0 = 12.0;  // r_match / r0, at least 8
};

struct ScatteringResult {
  double k = 0.0;
  double delta = 0.0;  // radians, in (-pi/2, pi/2]
  double a_f = 0.0;    // -tan(delta)/k
};

struct EffectiveRange {
  double a0 = 0.0;
  double r_eff = 0.0;
  double volume = 0.0;  // r_eff * a0^2

  // a0 / (1 - r_eff a0 k^2 / 2), the resummed two-term expansion.
  double a_f(double k) const;
};

// Zero-energy solution has a node at finite r (or beyond the matching radius).
bool has_bound_state(const GaussianPotential& pot, const Integrator& in = {});

double zero_energy_a(const GaussianPotential& pot, const Integrator& in = {});

// Born approximation (m_A / 4 pi hbar^2) * integral V d^3r.
double born_scattering_length(const GaussianPotential& pot);
double born_phase_shift(const GaussianPotential& pot, double k);

ScatteringResult phase_shift(const GaussianPotential& pot, double k, const Integrator& in = {});
std::vector<ScatteringResult> phase_shifts(const GaussianPotential& pot, const std::vector<double>& ks,
                                           const Integrator& in = {});

// Fit of a_f(k) = a0 + (1/2) r_eff a0^2 k^2 (+ k^4 curvature) on k r0 <= 0.2.
EffectiveRange fit_effective_range(const GaussianPotential& pot, const std::vector<double>& ks,
                                   const Integrator& in = {});
std::vector<double> default_k_grid(double r0, int points = 8);

// Depth V0 < 0 at which the first s-wave bound state appears.
double bound_state_threshold(double r0, const Integrator& in = {});

GaussianPotential tune_depth(double a_target, double r0, const Integrator& in = {});

}  // namespace fewbody
