#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "fewbody/energies.hpp"
#include "fewbody/special.hpp"

using namespace fewbody;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;
// converged value from the shell extrapolation (see the acceptance run)
const CoefficientSet k = CoefficientSet::with_alpha3_3(0.5649340, 2.3e-6);

double busch(double xi, double e) {
  return std::sqrt(2.0) * xi * gamma_inv(0.25 - 0.5 * e) - gamma_inv(0.75 - 0.5 * e);
}

}  // namespace

TEST_CASE("coefficient table in the omega0 = 0 limit") {
  const auto t = coefficient_table(0.0, k);
  CHECK(t.c2_1 == Approx(0.79788).epsilon(1e-5));
  CHECK(t.c2_2 == Approx(2.0 / pi * (1.0 - std::log(2.0))).epsilon(1e-14));
  CHECK(std::abs(t.c2_2 - 0.19535) < 1e-5);
  CHECK(std::abs(t.c2_3 + 0.39112) < 1e-5);
  CHECK(std::abs(t.d2_12 - 0.59841) < 1e-5);
  CHECK(std::abs(t.c3_2 + 0.85576) < 1e-5);
  CHECK(t.c3_2 == -6.0 * alpha3_2().value);
  CHECK(std::abs(t.c3_3 - 2.7921) < 2e-4);
  CHECK(std::abs(t.c4_3 - 2.43317) < 1e-4);
  CHECK(t.c3_3_uncertainty == Approx(12 * 2.3e-6));
}

TEST_CASE("coefficient table at omega0 = omega") {
  const auto t = coefficient_table(1.0, k);
  CHECK(t.c2_2 == 0.0);
  CHECK(std::abs(t.c2_3) < 1e-15);
  CHECK(t.d2_12 == 0.0);
  CHECK(std::abs(t.c3_3 - 3.2112) < 2e-4);
}

TEST_CASE("four-body coefficient does not depend on the trap ratios") {
  const double c4 = coefficient_table(0.0, k).c4_3;
  for (double r : {0.1, 0.5, 1.0, 2.0, 7.0}) CHECK(coefficient_table(r, k).c4_3 == c4);
}

TEST_CASE("U_m assembly") {
  const Dimensionless free0{0.05, 0.0, 0.0};
  CHECK(u3(free0, k) == Approx(-0.85576 * 0.0025 + 2.7921 * 0.000125).epsilon(2e-5));
  const auto zero = interaction_energies({0.0, 0.5, 0.3}, k);
  CHECK(zero.u2.total() == 0.0);
  CHECK(zero.u3.total() == 0.0);
  CHECK(zero.u4.total() == 0.0);
  // renormalization condition in the continuum limit
  for (double xi : {0.001, 0.01, 0.05}) {
    const auto e = interaction_energies({xi, 1.0, 0.2}, k);
    CHECK(e.u2.total() == std::sqrt(2.0 / pi) * xi);
    CHECK(e.u2.second == 0.0);
    CHECK(e.u2.range == 0.0);
  }
  // effective range enters at xi^2 through d2
  const auto a = interaction_energies({0.02, 0.0, 0.0}, k), b = interaction_energies({0.02, 0.0, 0.1}, k);
  CHECK(b.u2.total() - a.u2.total() == Approx(0.1 * 0.0004 * coefficient_table(0.0, k).d2_12).epsilon(1e-12));
}

TEST_CASE("total energy") {
  const auto u = interaction_energies({0.05, 0.0, 0.0}, k);
  CHECK(total_energy(u, 0) == 0.0);
  CHECK(total_energy(u, 1) == 1.5);
  CHECK(total_energy(u, 2) == Approx(3.0 + u.u2.total()).epsilon(1e-15));
  // Table-1 values composed by hand
  const double xi = 0.05;
  const double U2 = 0.79788 * xi + 0.19535 * xi * xi - 0.39112 * xi * xi * xi;
  const double U3 = -0.85576 * xi * xi + 2.7921 * xi * xi * xi;
  const double U4 = 2.43317 * xi * xi * xi;
  CHECK(total_energy(u, 4) == Approx(6.0 + 6.0 * U2 + 4.0 * U3 + U4).epsilon(2e-7));
  CHECK_THROWS(total_energy(u, -1));
}

TEST_CASE("counterterm") {
  const auto reg = RegulatorSpec::hard(100);
  CHECK(counterterm(0.0, 0.0, 2, reg, k).value == 0.0);
  CHECK(counterterm(0.0, 0.0, 3, reg, k).value == 0.0);
  const double xi0 = 0.01;
  CHECK(counterterm(xi0, 0.0, 2, reg, k).value == Approx(beta2_2(reg).value / k.alpha2_1 * xi0 * xi0).epsilon(1e-14));
  // grows like sqrt(omega_c/omega0)
  const double c1 = counterterm(xi0, 0.0, 2, RegulatorSpec::exponential(4e4), k).value;
  const double c4 = counterterm(xi0, 0.0, 2, RegulatorSpec::exponential(1.6e5), k).value;
  CHECK(c4 / c1 == Approx(2.0).epsilon(0.01));
  CHECK_THROWS(counterterm(xi0, 0.0, 4, reg, k));
}

TEST_CASE("regulated energies satisfy the renormalization condition") {
  for (double r : {50.0, 200.0})
    for (double xi : {0.001, 0.01, 0.05})
      for (auto reg : {RegulatorSpec::hard(r), RegulatorSpec::exponential(r)}) {
        const auto e = regulated_energies({xi, 1.0, 0.0}, reg, k);
        CHECK(std::abs(e.u2.total() - k.alpha2_1 * xi) <= 1e-14);
      }
  CHECK_THROWS(regulated_energies({0.01, 0.0, 0.0}, RegulatorSpec::hard(50), k));
}

TEST_CASE("regulated energies approach the continuum like (omega/omega_c)^{1/2}") {
  // The beta2_2 remainder -(2/pi)(3/2)/sqrt(2 omega_c/omega) only cancels
  // against the counterterm when omega = omega0.
  const Dimensionless in{0.01, 0.5, 0.0};
  const auto cont = interaction_energies(in, k);
  double prev2 = 0, prev3 = 0;
  for (double r : {200.0, 400.0, 800.0, 1600.0, 3200.0}) {
    const auto e = regulated_energies(in, RegulatorSpec::exponential(r), k);
    const double d2 = e.u2.total() - cont.u2.total(), d3 = e.u3.total() - cont.u3.total();
    if (prev2 != 0) {
      CHECK(prev2 / d2 == Approx(std::sqrt(2.0)).epsilon(0.05));
      CHECK(prev3 / d3 == Approx(std::sqrt(2.0)).epsilon(0.05));
    }
    prev2 = d2;
    prev3 = d3;
  }
  const double lead = in.xi * in.xi * 2.0 / pi * 1.5 / std::sqrt(2.0) * (1.0 - in.omega0_over_omega);
  CHECK(prev2 * std::sqrt(3200.0) == Approx(lead).epsilon(0.03));
  // no residue at all when omega = omega0
  const auto same = regulated_energies({0.01, 1.0, 0.0}, RegulatorSpec::exponential(200), k);
  CHECK(std::abs(same.u2.total() - interaction_energies({0.01, 1.0, 0.0}, k).u2.total()) < 1e-15);
}

TEST_CASE("exact two-body energy") {
  CHECK(exact_two_body_energy(0.0) == 1.5);
  for (double xi : {-0.3, -0.05, 0.02, 0.4}) {
    const double e = exact_two_body_energy(xi);
    CHECK(std::abs(busch(xi, e)) < 1e-13);
    CHECK((e > 1.5) == (xi > 0));
  }
  CHECK_THROWS(exact_two_body_energy(1.0));
}

TEST_CASE("perturbative U2 matches the exact energy to O(xi^4)") {
  const auto t = coefficient_table(0.0, k);
  double worst = 0;
  for (double xi = 0.001; xi <= 0.0501; xi += 0.001)
    for (double s : {-1.0, 1.0}) {
      const double x = s * xi;
      const double cubic = t.c2_1 * x + t.c2_2 * x * x + t.c2_3 * x * x * x;
      worst = std::max(worst, std::abs(exact_two_body_energy(x) - 1.5 - cubic) / std::pow(xi, 4));
    }
  CAPTURE(worst);
  CHECK(worst < 5.0);
}

TEST_CASE("scheme independence") {
  const Dimensionless in{0.02, 0.5, 0.0};
  CHECK(scheme_independence_residual(in, 0.5, 3, k) < 1e-16);
  const double r1 = scheme_independence_residual({0.02, 0.5, 0.0}, 0.25, 3, k);
  const double r2 = scheme_independence_residual({0.01, 0.5, 0.0}, 0.25, 3, k);
  CHECK(r1 / r2 >= 13.0);
  CHECK(r1 / r2 <= 19.0);
  // two particles at omega = omega0: only the truncation remainder is left
  const double two = scheme_independence_residual({0.01, 1.0, 0.0}, 0.5, 2, k);
  CHECK(two > 0.0);
  CHECK(two < 1e-6);
}

TEST_CASE("physical units") {
  const TrapContext rb = rubidium87(2 * pi * 1e5, 0.0);
  CHECK(rb.omega_s() / (2 * pi) == Approx(4.14e6).epsilon(0.005));
  CHECK(!rb.outside_perturbative_range());
  const TrapContext tight = rubidium87(2 * pi * 5e7, 0.0);
  CHECK(tight.outside_perturbative_range());
  CHECK(rb.dimensionless().xi == Approx(rb.a_t / rb.sigma()));
  CHECK_THROWS(rb.sigma0());
  const double m = rb.mass;
  CHECK(g2(rb.a_t, m) == Approx(4 * pi * units::hbar * units::hbar * rb.a_t / m));
  CHECK(g2_prime(rb.a_t, rb.r_eff, m) == Approx(2 * pi * units::hbar * units::hbar / m * rb.r_eff * rb.a_t * rb.a_t));
}

TEST_CASE("rescaled energies") {
  const auto t = coefficient_table(0.0, k);
  const auto z = rescaled_u(0.0, t);
  CHECK(z.u2_first == 0.0);
  CHECK(z.u3_second == 0.0);
  CHECK(z.u2_exact_minus_first == 0.0);
  for (double w : {0.001, 0.01, 0.04}) {
    const auto p = rescaled_u(w, t);
    CHECK(p.u2_first == Approx(t.c2_1 * std::pow(w, 1.5)).epsilon(1e-14));
    CHECK(p.u3_second == Approx(t.c3_2 * w * w).epsilon(1e-14));
    CHECK(p.u2_exact_minus_first + p.u2_first == Approx((exact_two_body_energy(std::sqrt(w)) - 1.5) * w).epsilon(1e-10));
    CHECK(rescaled_u(w, t, -1).u2_first == -p.u2_first);
  }
  CHECK_THROWS(rescaled_u(-0.1, t));
}
