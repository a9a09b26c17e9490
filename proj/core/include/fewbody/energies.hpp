#pragma once

#include <optional>
#include <vector>

#include "fewbody/coeffs.hpp"

namespace fewbody {

namespace units {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double atomic_mass = 1.66053906660e-27;  // kg
}  // namespace units

// Converged (omega_c -> infinity) values of the Table-2 style coefficients.
struct CoefficientSet {
  double alpha2_1 = 0.0;
  double alpha2_12 = 0.0;
  double alpha3_2 = 0.0;
  double alpha3_3 = 0.0;
  double alpha3_3_uncertainty = 0.0;
  double alpha41_3 = 0.0;
  double alpha42_3 = 0.0;
  double alpha43_3 = 0.0;
  double alpha5_3 = 0.0;

  // Everything except alpha3_3, which must be supplied.
  static CoefficientSet with_alpha3_3(double value, double uncertainty);
};

// c_m^{(n)}(omega, omega0) and d_2^{(1,2)}(omega, omega0); depends only on
// omega0 / omega.
struct CoefficientTable {
  double c2_1 = 0.0;
  double c2_2 = 0.0;
  double c2_3 = 0.0;
  double d2_12 = 0.0;
  double c3_2 = 0.0;
  double c3_3 = 0.0;
  double c3_3_uncertainty = 0.0;
  double c4_3 = 0.0;
};

CoefficientTable coefficient_table(double omega0_over_omega, const CoefficientSet& k);

// Inputs in trap units: xi = a_t(omega0)/sigma(omega), reff = r_eff/sigma(omega).
struct Dimensionless {
  double xi = 0.0;
  double omega0_over_omega = 0.0;
  double reff = 0.0;
};

// Pieces of one U_m by order in xi; `range` is the r_eff * xi^2 term.
struct OrderTerms {
  double first = 0.0;
  double second = 0.0;
  double third = 0.0;
  double range = 0.0;

  double total() const { return first + second + third + range; }
};

struct InteractionEnergies {
  OrderTerms u2;
  OrderTerms u3;
  OrderTerms u4;
};

// Continuum-limit assembly from the coefficient table.
InteractionEnergies interaction_energies(const Dimensionless& in, const CoefficientSet& k);
double u2(const Dimensionless& in, const CoefficientSet& k);
double u3(const Dimensionless& in, const CoefficientSet& k);
double u4(const Dimensionless& in, const CoefficientSet& k);

// epsilon0 N + U2 N(N-1)/2! + U3 N(N-1)(N-2)/3! + U4 N(N-1)(N-2)(N-3)/4!
double total_energy(const InteractionEnergies& u, int n);

struct Counterterm {
  int order = 2;
  double value = 0.0;  // a_ct(omega0) / sigma(omega0)
  double bare = 0.0;   // (a_t + a_ct) / sigma(omega0)
  RegulatorSpec regulator;
};

// xi0 = a_t/sigma(omega0), reff0 = r_eff/sigma(omega0); reg is referred to omega0.
Counterterm counterterm(double xi0, double reff0, int order, const RegulatorSpec& reg, const CoefficientSet& k);

// Finite-cutoff assembly: divergent sums and the counterterm carry the
// regulator (reg is referred to omega); convergent coefficients that do not
// multiply a divergent sum keep their converged values.
InteractionEnergies regulated_energies(const Dimensionless& in, const RegulatorSpec& reg, const CoefficientSet& k);

// Relative-motion energy of two trapped particles with zero-range
// interaction, on the branch through 3/2 at xi = 0.
double exact_two_body_energy(double xi);

// |E(omega; omega0) - E(omega; omega0')| at fixed N, with a_t(omega0')
// obtained from U2(omega0'; omega0).
double scheme_independence_residual(const Dimensionless& in, double omega0_prime_over_omega, int n,
                                    const CoefficientSet& k);

struct TrapContext {
  double omega = 0.0;   // rad/s
  double omega0 = 0.0;  // rad/s
  double a_t = 0.0;     // m
  double r_eff = 0.0;   // m
  double mass = 0.0;    // kg
  std::optional<RegulatorSpec> regulator;

  void validate() const;
  double sigma() const;
  double sigma0() const;
  double xi() const { return a_t / sigma(); }
  bool outside_perturbative_range() const;  // |xi| > 0.2
  Dimensionless dimensionless() const;
  // hbar / (m a_t^2)
  double omega_s() const;
};

TrapContext rubidium87(double omega, double omega0 = 0.0);

// g2 = 4 pi hbar^2 a / m and g2' = 4 pi (hbar^2/m) r_eff a^2 / 2, leading order.
double g2(double a, double mass);
double g2_prime(double a, double r_eff, double mass);

// Fig.-1 style curves: energies in units of hbar*omega_s versus omega/omega_s
// for omega0 = 0 and r_eff = 0.
struct RescaledPoint {
  double omega_over_omegas = 0.0;
  double u2_first = 0.0;
  double u2_second_third = 0.0;
  double u3_second = 0.0;
  double u3_second_third = 0.0;
  double u4_third = 0.0;
  double u2_exact_minus_first = 0.0;
};

RescaledPoint rescaled_u(double omega_over_omegas, const CoefficientTable& t, int sign = 1);

}  // namespace fewbody
