#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "fewbody/coeffs.hpp"
#include "fewbody/hobasis.hpp"

using namespace fewbody;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("regulator validation and weights") {
  CHECK_THROWS_AS(RegulatorSpec::hard(1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(RegulatorSpec::exponential(INFINITY).validate(), std::invalid_argument);
  CHECK_NOTHROW(RegulatorSpec::hard(2.0).validate());
  CHECK(RegulatorSpec::hard(10).weight(9.9) == 1.0);
  CHECK(RegulatorSpec::hard(10).weight(10.0) == 0.0);
  CHECK(RegulatorSpec::exponential(10).weight(10.0) == Approx(std::exp(-1.0)));
  CHECK(RegulatorSpec::exponential(100).rescaled(2.0).cutoff_ratio == 50.0);
  CHECK_THROWS(beta2_2(RegulatorSpec::hard(0.5)));
}

TEST_CASE("closed-form coefficients") {
  // 30-digit evaluations of the closed forms
  CHECK(alpha2_1().value == Approx(0.797884560802865356).epsilon(1e-15));
  CHECK(alpha2_12().value == Approx(0.598413420602149017).epsilon(1e-15));
  CHECK(alpha3_2().value == Approx(0.142626385580782296).epsilon(1e-14));
  CHECK(alpha43_3().value == Approx(0.438946332406209070).epsilon(1e-14));
  CHECK(alpha5_3().value == Approx(0.0519156965254228979).epsilon(1e-14));
  CHECK(alpha2_1().method == Method::analytic);
}

TEST_CASE("alpha5_3 evaluation paths agree") {
  const double h = alpha5_3(Alpha5Mode::hypergeometric).value;
  CHECK(std::abs(h - alpha5_3(Alpha5Mode::dilog).value) < 1e-12);
  CHECK(std::abs(h - alpha5_3(Alpha5Mode::sum).value) < 1e-12);
}

TEST_CASE("alpha43_3 series with tail estimate") {
  CHECK(std::abs(alpha43_3_sum().value - alpha43_3().value) < 1e-9);
  // regulated partial sums approach from below
  const double p100 = alpha43_3_partial(RegulatorSpec::hard(100)).value;
  const double p400 = alpha43_3_partial(RegulatorSpec::hard(400)).value;
  CHECK(p100 < p400);
  CHECK(p400 < alpha43_3().value);
}

TEST_CASE("convergent sums at omega_c/omega = 80") {
  // independent brute-force evaluation of the same triple products
  CHECK(alpha41_3(RegulatorSpec::hard(80)).value == Approx(0.077465360150).epsilon(1e-9));
  CHECK(alpha42_3(RegulatorSpec::hard(80)).value == Approx(0.051099327250).epsilon(1e-9));
  CHECK(std::abs(alpha3_2_sum(RegulatorSpec::hard(80)).value - alpha3_2().value) < 1e-12);
}

TEST_CASE("convergent coefficients are positive") {
  for (double r : {10.0, 80.0}) {
    CHECK(alpha3_2_sum(RegulatorSpec::hard(r)).value > 0.0);
    CHECK(alpha41_3(RegulatorSpec::hard(r)).value > 0.0);
    CHECK(alpha42_3(RegulatorSpec::exponential(r)).value > 0.0);
  }
}

TEST_CASE("regulator dependence of convergent coefficients is O(omega/omega_c)") {
  // Exponential damping reaches every term, so the two schemes differ at
  // first order in omega/omega_c rather than agreeing to 1e-6 at 200.
  auto diff = [](auto f, double r) { return std::abs(f(RegulatorSpec::exponential(r)).value - f(RegulatorSpec::hard(r)).value); };
  auto a32 = [](const RegulatorSpec& g) { return alpha3_2_sum(g); };
  auto a41 = [](const RegulatorSpec& g) { return alpha41_3(g); };
  auto a42 = [](const RegulatorSpec& g) { return alpha42_3(g); };
  for (auto ratio : {diff(a32, 200) / diff(a32, 400), diff(a41, 200) / diff(a41, 400), diff(a42, 200) / diff(a42, 400)})
    CHECK(ratio == Approx(2.0).epsilon(0.05));
  CHECK(diff(a32, 200) * 200 < 1.0);
  CHECK(diff(a41, 200) * 200 < 1.0);
  CHECK(diff(a42, 200) * 200 < 1.0);
}

TEST_CASE("beta2_2 exponential closed form") {
  CHECK(beta2_2_exponential_closed(10) == Approx(1.07410505162216975).epsilon(1e-14));
  for (double r : {3.0, 10.0, 57.0, 200.0})
    CHECK(beta2_2(RegulatorSpec::exponential(r)).value == Approx(beta2_2_exponential_closed(r)).epsilon(1e-12));
  CHECK(beta2_2_finite_part() == Approx(-2.0 / pi * (1.0 - std::log(2.0))));
}

TEST_CASE("beta coefficients grow with the cutoff") {
  double prev2 = 0, prev23 = 0, prev33 = 0;
  for (double r : {10.0, 20.0, 40.0, 80.0}) {
    const auto reg = RegulatorSpec::exponential(r);
    const double b2 = beta2_2(reg).value, b23 = beta2_3(reg, FactorMode::direct).value,
                 b33 = beta3_3(reg, FactorMode::direct).value;
    CHECK(b2 > prev2);
    CHECK(b23 > prev23);
    CHECK(b33 > prev33);
    prev2 = b2;
    prev23 = b23;
    prev33 = b33;
  }
  CHECK(beta2_2(RegulatorSpec::hard(41)).value > beta2_2(RegulatorSpec::hard(21)).value);
}

TEST_CASE("factorization identities with the exponential regulator") {
  for (double r : {10.0, 50.0, 200.0}) {
    const auto reg = RegulatorSpec::exponential(r);
    const double b2 = beta2_2(reg).value;
    const double b23 = beta2_3(reg, FactorMode::direct).value;
    const double b33 = beta3_3(reg, FactorMode::direct).value;
    CHECK(std::abs(b23 - b2 * b2 / alpha2_1().value) <= 1e-10 * b23);
    CHECK(std::abs(b33 - alpha3_2_sum(reg).value * b2 / alpha2_1().value) <= 1e-10 * b33);
  }
}

TEST_CASE("beta2_2 approaches its asymptotic form linearly in omega/omega_c") {
  std::vector<double> d;
  for (double r : {100.0, 400.0, 1600.0}) d.push_back(beta2_2(RegulatorSpec::exponential(r)).value - beta2_2_asymptotic(r));
  const double slope1 = std::log(std::abs(d[1] / d[0])) / std::log(4.0);
  const double slope2 = std::log(std::abs(d[2] / d[1])) / std::log(4.0);
  CHECK(slope1 == Approx(-1.0).epsilon(0.1));
  CHECK(slope2 == Approx(-1.0).epsilon(0.1));
  // leading remainder (2/pi) omega/omega_c
  CHECK(d[2] * 1600.0 == Approx(2.0 / pi).epsilon(0.05));
}

TEST_CASE("sums are deterministic") {
  const auto reg = RegulatorSpec::exponential(37.0);
  CHECK(beta3_3(reg, FactorMode::direct).value == beta3_3(reg, FactorMode::direct).value);
  CHECK(alpha41_3(reg).value == alpha41_3(reg).value);
}

TEST_CASE("alpha3_3 shell sums against a naive triple loop") {
  // 1/4 sum_l (2l+1) sum K(a,b)K(b,c)K(a,c) / ((a+b+l)(a+c+l)), both denominators 2(...) < R
  const double R = 21.0;
  double naive = 0.0;
  for (int l = 0; 2 * l < R; ++l)
    for (int a = 0; 2 * (a + l) < R; ++a)
      for (int b = 0; 2 * (a + b + l) < R; ++b)
        for (int c = 0; 2 * (a + c + l) < R; ++c) {
          if (a + b + l == 0 || a + c + l == 0) continue;
          naive += 0.25 * (2 * l + 1) * k_sp(a, b, l) * k_sp(b, c, l) * k_sp(a, c, l) / ((a + b + l) * double(a + c + l));
        }
  const ShellSums sums = alpha3_3_shells(20, 1);
  CHECK(sums.partial_alpha3_3(R) == Approx(naive).epsilon(1e-13));
  CHECK(alpha3_3_partial(RegulatorSpec::hard(R)).value == Approx(naive).epsilon(1e-13));
  CHECK(sums.partial_alpha4_3(R) == Approx(alpha43_3_partial(RegulatorSpec::hard(R)).value).epsilon(1e-13));
  CHECK_THROWS_AS(sums.partial_alpha3_3(200.0), std::out_of_range);
  CHECK_THROWS(alpha3_3_partial(RegulatorSpec::exponential(R)));
}

TEST_CASE("alpha3_3 shell sums independent of thread count") {
  const ShellSums one = alpha3_3_shells(60, 1);
  const ShellSums three = alpha3_3_shells(60, 3);
  CHECK(one.alpha3_3 == three.alpha3_3);
  CHECK(one.alpha4_3 == three.alpha4_3);
  // partial sums increase toward the converged value
  CHECK(one.partial_alpha3_3(41) < one.partial_alpha3_3(81));
  CHECK(one.partial_alpha3_3(81) < 0.565);
}
