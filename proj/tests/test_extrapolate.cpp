#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fewbody/coeffs.hpp"
#include "fewbody/extrapolate.hpp"

using namespace fewbody;
using doctest::Approx;

namespace {

std::vector<FitPoint> synthetic(double a, double b, double c, const std::vector<double>& xs) {
  std::vector<FitPoint> p;
  for (double x : xs) p.emplace_back(x, a + b * std::sqrt(x) + c * x);
  return p;
}

const std::vector<double> xs{1.0 / 801, 1.0 / 1001, 1.0 / 1201, 1.0 / 1401, 1.0 / 1601, 1.0 / 1801, 1.0 / 1999};

}  // namespace

TEST_CASE("exact model data is recovered") {
  const auto fit = fit_sqrt_model(synthetic(0.5, -0.3, 2.0, xs));
  CHECK(fit.a == Approx(0.5).epsilon(1e-12));
  CHECK(fit.b == Approx(-0.3).epsilon(1e-10));
  CHECK(fit.c == Approx(2.0).epsilon(1e-8));
  CHECK(fit.residual_norm < 1e-13);
  CHECK(fit(0.0) == fit.a);
}

TEST_CASE("adding a point on the fitted curve leaves the fit unchanged") {
  auto pts = synthetic(0.56, -0.2, 1.1, xs);
  pts[2].second += 3e-7;
  pts[5].second -= 2e-7;
  const auto f1 = fit_sqrt_model(pts);
  pts.emplace_back(1.0 / 1500, f1(1.0 / 1500));
  const auto f2 = fit_sqrt_model(pts);
  CHECK(std::abs(f1.a - f2.a) < 1e-12);
  CHECK(std::abs(f1.b - f2.b) < 1e-12 * std::max(1.0, std::abs(f1.b)));
  CHECK(std::abs(f1.c - f2.c) < 1e-12 * std::max(1.0, std::abs(f1.c)) * 100);
}

TEST_CASE("intercept invariant under rescaling x") {
  auto pts = synthetic(0.3, 0.7, -4.0, xs);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].second += (i % 2 ? 1e-7 : -1e-7);
  const auto f1 = fit_sqrt_model(pts);
  const double s = 7.5;
  auto scaled = pts;
  for (auto& p : scaled) p.first *= s;
  const auto f2 = fit_sqrt_model(scaled);
  CHECK(f2.a == Approx(f1.a).epsilon(1e-12));
  CHECK(f2.b * std::sqrt(s) == Approx(f1.b).epsilon(1e-9));
  CHECK(f2.c * s == Approx(f1.c).epsilon(1e-8));
}

TEST_CASE("monotone increasing partial sums extrapolate above the last one") {
  // y = 1 - 0.8 sqrt(x) + 0.1 x, rising toward 1 as x -> 0
  const auto pts = synthetic(1.0, -0.8, 0.1, xs);
  double last = 0;
  for (const auto& p : pts) last = std::max(last, p.second);
  CHECK(fit_sqrt_model(pts).a > last);
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS_AS(fit_sqrt_model(synthetic(1, 1, 1, {0.1, 0.2, 0.3})), std::invalid_argument);
  CHECK_THROWS_AS(fit_sqrt_model(synthetic(1, 1, 1, {0.1, 0.1, 0.2, 0.3})), std::invalid_argument);
  CHECK_THROWS_AS(fit_sqrt_model(synthetic(1, 1, 1, {-0.1, 0.1, 0.2, 0.3})), std::invalid_argument);
  const auto p = fit_power_model(synthetic(2, 0, 3, {0.1, 0.2, 0.3, 0.4}), {0.0, 1.0});
  CHECK(p.params[0] == Approx(2.0));
  CHECK(p.params[1] == Approx(3.0));
}

TEST_CASE("cutoff grids") {
  const auto g = default_cutoff_grid();
  CHECK(g.size() == 7);
  CHECK(g.front() == 801);
  CHECK(g.back() == 1999);
  for (int r : g) CHECK(r % 2 == 1);
  const auto c = cutoff_grid(401);
  CHECK(c.back() == 401);
  for (int r : c) CHECK(r % 2 == 1);
  CHECK_THROWS(cutoff_grid(401, 3));
}

TEST_CASE("calibration on alpha43_3 improves with a larger grid") {
  const ShellSums sums = alpha3_3_shells(300);
  const double coarse = calibrate_uncertainty(sums, cutoff_grid(299));
  const double fine = calibrate_uncertainty(sums, cutoff_grid(599));
  const double four = calibrate_uncertainty(sums, cutoff_grid(599, 4));
  const double low = calibrate_uncertainty(sums, {41, 61, 81, 101});
  const double even = calibrate_uncertainty(sums, {240, 340, 440, 598});
  CAPTURE(coarse);
  CAPTURE(fine);
  CAPTURE(four);
  CHECK(fine < coarse);
  // the error tracks the largest cutoff rather than the number of points
  CHECK(std::isfinite(four));
  CHECK(four < 2.0 * fine);
  CHECK(low > 5.0 * fine);
  // even cutoffs sit on the steps of the partial sums
  CHECK(even > 2.0 * fine);
  CHECK(coarse < 1e-3);

  const auto est = estimate_alpha3_3(sums, cutoff_grid(599));
  CHECK(est.alpha3_3.method == Method::extrapolated);
  CHECK(est.alpha3_3.uncertainty == est.calibration_error);
  CHECK(std::abs(est.alpha3_3.value - 0.56494) < 1e-3);
  CHECK(est.alpha3_3.value > est.partial_alpha3_3.back());
}
