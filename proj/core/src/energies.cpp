#include "fewbody/energies.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "fewbody/special.hpp"

namespace fewbody {

namespace {
constexpr double pi = std::numbers::pi;
}

CoefficientSet CoefficientSet::with_alpha3_3(double value, double uncertainty) {
  const RegulatorSpec tree = RegulatorSpec::hard(80.0);
  CoefficientSet k;
  k.alpha2_1 = fewbody::alpha2_1().value;
  k.alpha2_12 = fewbody::alpha2_12().value;
  k.alpha3_2 = fewbody::alpha3_2().value;
  k.alpha3_3 = value;
  k.alpha3_3_uncertainty = uncertainty;
  k.alpha41_3 = fewbody::alpha41_3(tree).value;
  k.alpha42_3 = fewbody::alpha42_3(tree).value;
  k.alpha43_3 = fewbody::alpha43_3().value;
  k.alpha5_3 = fewbody::alpha5_3().value;
  return k;
}

CoefficientTable coefficient_table(double omega0_over_omega, const CoefficientSet& k) {
  if (!(omega0_over_omega >= 0.0) || !std::isfinite(omega0_over_omega))
    throw std::invalid_argument("coefficient_table: omega0/omega must be finite and >= 0");
  const double r = std::sqrt(omega0_over_omega);
  const double l2 = std::numbers::ln2;
  CoefficientTable t;
  t.c2_1 = k.alpha2_1;
  t.c2_2 = 2.0 / pi * (1.0 - l2) * (1.0 - r);
  t.c2_3 = std::pow(2.0 / pi, 1.5) * (1.0 - l2) * (1.0 - l2) * (1.0 - r) * (1.0 - r) -
           k.alpha43_3 * (1.0 - omega0_over_omega);
  t.d2_12 = k.alpha2_12 * (1.0 - omega0_over_omega);
  t.c3_2 = -6.0 * k.alpha3_2;
  t.c3_3 = -12.0 * k.alpha3_2 * t.c2_2 / k.alpha2_1 + 12.0 * k.alpha3_3 - 6.0 * k.alpha43_3 - 18.0 * k.alpha5_3;
  t.c3_3_uncertainty = 12.0 * k.alpha3_3_uncertainty;
  t.c4_3 = 48.0 * k.alpha41_3 + 48.0 * k.alpha42_3 - 72.0 * k.alpha5_3;
  return t;
}

InteractionEnergies interaction_energies(const Dimensionless& in, const CoefficientSet& k) {
  const CoefficientTable t = coefficient_table(in.omega0_over_omega, k);
  const double x = in.xi;
  InteractionEnergies u;
  u.u2 = {t.c2_1 * x, t.c2_2 * x * x, t.c2_3 * x * x * x, t.d2_12 * in.reff * x * x};
  u.u3 = {0.0, t.c3_2 * x * x, t.c3_3 * x * x * x, 0.0};
  u.u4 = {0.0, 0.0, t.c4_3 * x * x * x, 0.0};
  return u;
}

double u2(const Dimensionless& in, const CoefficientSet& k) { return interaction_energies(in, k).u2.total(); }
double u3(const Dimensionless& in, const CoefficientSet& k) { return interaction_energies(in, k).u3.total(); }
double u4(const Dimensionless& in, const CoefficientSet& k) { return interaction_energies(in, k).u4.total(); }

double total_energy(const InteractionEnergies& u, int n) {
  if (n < 0) throw std::invalid_argument("total_energy: negative particle number");
  const double N = n;
  return 1.5 * N + u.u2.total() * N * (N - 1) / 2.0 + u.u3.total() * N * (N - 1) * (N - 2) / 6.0 +
         u.u4.total() * N * (N - 1) * (N - 2) * (N - 3) / 24.0;
}

Counterterm counterterm(double xi0, double reff0, int order, const RegulatorSpec& reg, const CoefficientSet& k) {
  if (order != 2 && order != 3) throw std::invalid_argument("counterterm: order must be 2 or 3");
  reg.validate();
  const double b = beta2_2(reg).value;
  double rhs = b * xi0 * xi0;
  if (order == 3) {
    const double b3 = beta2_3(reg, FactorMode::factorized).value;
    rhs -= (b3 - 2.0 * b * b / k.alpha2_1 - k.alpha43_3) * xi0 * xi0 * xi0;
    rhs -= k.alpha2_12 * reff0 * xi0 * xi0;
  }
  Counterterm ct;
  ct.order = order;
  ct.value = rhs / k.alpha2_1;
  ct.bare = xi0 + ct.value;
  ct.regulator = reg;
  return ct;
}

InteractionEnergies regulated_energies(const Dimensionless& in, const RegulatorSpec& reg, const CoefficientSet& k) {
  if (!(in.omega0_over_omega > 0.0))
    throw std::invalid_argument("regulated_energies: omega0 must be positive at finite cutoff");
  reg.validate();
  const double r = std::sqrt(in.omega0_over_omega);
  const double x = in.xi;
  const RegulatorSpec reg0 = reg.rescaled(in.omega0_over_omega);

  // Counterterm in units of sigma(omega0), then referred to sigma(omega).
  const double xi0 = x * r;
  const double reff0 = in.reff * r;
  const Counterterm ct2 = counterterm(xi0, reff0, 2, reg0, k);
  const Counterterm ct3 = counterterm(xi0, reff0, 3, reg0, k);
  const double chi2 = ct2.value / r;
  const double chi3 = (ct3.value - ct2.value) / r;  // xi^3 and r_eff pieces

  const double b = beta2_2(reg).value;
  const double b23 = beta2_3(reg, FactorMode::factorized).value;
  const double b33 = beta3_3(reg, FactorMode::factorized).value;
  const double a32 = alpha3_2_sum(reg).value;

  InteractionEnergies u;
  // Products with chi keep only its leading xi^2 piece (third order overall).
  u.u2.first = k.alpha2_1 * x;
  u.u2.second = -b * x * x + k.alpha2_1 * chi2;
  const double chi3_xi3 = (ct3.value - ct2.value + k.alpha2_12 * reff0 * xi0 * xi0 / k.alpha2_1) / r;
  u.u2.third = k.alpha2_1 * chi3_xi3 - k.alpha43_3 * x * x * x + b23 * x * x * x - 2.0 * b * chi2 * x;
  u.u2.range = k.alpha2_1 * (chi3 - chi3_xi3) + k.alpha2_12 * in.reff * x * x;

  u.u3.second = -6.0 * k.alpha3_2 * x * x;
  u.u3.third = 12.0 * k.alpha3_3 * x * x * x + 12.0 * b33 * x * x * x - 12.0 * a32 * chi2 * x -
               6.0 * k.alpha43_3 * x * x * x - 18.0 * k.alpha5_3 * x * x * x;

  u.u4.third = (48.0 * k.alpha41_3 + 48.0 * k.alpha42_3 - 72.0 * k.alpha5_3) * x * x * x;
  return u;
}

double exact_two_body_energy(double xi) {
  if (!(std::abs(xi) < 1.0)) throw std::domain_error("exact_two_body_energy: |xi| must be < 1");
  if (xi == 0.0) return 1.5;
  // sqrt(2) Gamma(3/4 - E/2) / Gamma(1/4 - E/2) = 1/xi, written with 1/Gamma
  // so that both sides stay finite across the poles.
  auto f = [xi](double e) { return std::sqrt(2.0) * xi * gamma_inv(0.25 - e / 2.0) - gamma_inv(0.75 - e / 2.0); };
  double lo = xi > 0.0 ? 1.5 : 0.5;
  double hi = xi > 0.0 ? 2.5 : 1.5;
  if (f(lo) * f(hi) > 0.0) throw std::runtime_error("exact_two_body_energy: root not bracketed");
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  if (iters >= 200) throw std::runtime_error("exact_two_body_energy: root finder did not converge");
  return 0.5 * (a + b);
}

double scheme_independence_residual(const Dimensionless& in, double omega0_prime_over_omega, int n,
                                    const CoefficientSet& k) {
  if (!(omega0_prime_over_omega > 0.0)) throw std::invalid_argument("scheme_independence_residual: omega0' must be > 0");
  const double e0 = total_energy(interaction_energies(in, k), n);

  // Two-body energy in a trap at omega0', in units of hbar*omega0'.
  const double s = std::sqrt(omega0_prime_over_omega);  // sigma(omega)/sigma(omega0')
  Dimensionless at_prime{in.xi * s, in.omega0_over_omega / omega0_prime_over_omega, in.reff * s};
  const double u2p = u2(at_prime, k);
  const double xi0_prime = u2p / k.alpha2_1;  // a_t(omega0')/sigma(omega0')

  Dimensionless moved{xi0_prime / s, omega0_prime_over_omega, in.reff};
  const double e1 = total_energy(interaction_energies(moved, k), n);
  return std::abs(e0 - e1);
}

void TrapContext::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("TrapContext: omega must be positive");
  if (!(omega0 >= 0.0)) throw std::invalid_argument("TrapContext: omega0 must be >= 0");
  if (!(mass > 0.0)) throw std::invalid_argument("TrapContext: mass must be positive");
  if (regulator) regulator->validate();
}

double TrapContext::sigma() const { return std::sqrt(units::hbar / (mass * omega)); }

double TrapContext::sigma0() const {
  if (!(omega0 > 0.0)) throw std::domain_error("TrapContext: sigma(omega0) undefined for omega0 = 0");
  return std::sqrt(units::hbar / (mass * omega0));
}

bool TrapContext::outside_perturbative_range() const { return std::abs(xi()) > 0.2; }

Dimensionless TrapContext::dimensionless() const {
  validate();
  return {a_t / sigma(), omega0 / omega, r_eff / sigma()};
}

double TrapContext::omega_s() const {
  if (a_t == 0.0) throw std::domain_error("TrapContext: omega_s undefined for a_t = 0");
  return units::hbar / (mass * a_t * a_t);
}

TrapContext rubidium87(double omega, double omega0) {
  TrapContext c;
  c.omega = omega;
  c.omega0 = omega0;
  c.a_t = 5.3e-9;
  c.r_eff = 7.9e-9;
  c.mass = 86.9 * units::atomic_mass;
  return c;
}

double g2(double a, double mass) { return 4.0 * pi * units::hbar * units::hbar / mass * a; }

double g2_prime(double a, double r_eff, double mass) {
  return 4.0 * pi * units::hbar * units::hbar / mass * 0.5 * r_eff * a * a;
}

RescaledPoint rescaled_u(double omega_over_omegas, const CoefficientTable& t, int sign) {
  if (!(omega_over_omegas >= 0.0)) throw std::invalid_argument("rescaled_u: omega/omega_s must be >= 0");
  if (sign != 1 && sign != -1) throw std::invalid_argument("rescaled_u: sign must be +1 or -1");
  const double w = omega_over_omegas;
  const double x = sign * std::sqrt(w);  // a_t(0)/sigma(omega)
  RescaledPoint p;
  p.omega_over_omegas = w;
  p.u2_first = t.c2_1 * x * w;
  p.u2_second_third = (t.c2_2 * x * x + t.c2_3 * x * x * x) * w;
  p.u3_second = t.c3_2 * x * x * w;
  p.u3_second_third = (t.c3_2 * x * x + t.c3_3 * x * x * x) * w;
  p.u4_third = t.c4_3 * x * x * x * w;
  p.u2_exact_minus_first = (exact_two_body_energy(x) - 1.5) * w - p.u2_first;
  return p;
}

}  // namespace fewbody
