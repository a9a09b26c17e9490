#include "fewbody/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

namespace fewbody {

double AsymptoticFit::operator()(double x) const {
  double y = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k) y += params[k] * std::pow(x, exponents[k]);
  return y;
}

AsymptoticFit fit_power_model(const std::vector<FitPoint>& points, const std::vector<double>& exponents) {
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto p = static_cast<Eigen::Index>(exponents.size());
  if (p == 0) throw std::invalid_argument("fit_power_model: empty basis");
  if (n <= p) throw std::invalid_argument("fit_power_model: need more points than parameters");
  std::set<double> xs;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !std::isfinite(y)) throw std::invalid_argument("fit_power_model: need x > 0 and finite y");
    xs.insert(x);
  }
  if (static_cast<Eigen::Index>(xs.size()) != n) throw std::invalid_argument("fit_power_model: duplicate x");

  Eigen::MatrixXd A(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < p; ++k) A(i, k) = std::pow(points[i].first, exponents[k]);
    y(i) = points[i].second;
  }
  // Column scaling keeps the rank test meaningful when x spans decades.
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (Eigen::Index k = 0; k < p; ++k) A.col(k) /= scale(k);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-13);
  if (qr.rank() < p) throw std::runtime_error("fit_power_model: rank-deficient design");
  Eigen::VectorXd coef = qr.solve(y);
  const double resid = (A * coef - y).norm();
  for (Eigen::Index k = 0; k < p; ++k) coef(k) /= scale(k);

  AsymptoticFit fit;
  fit.exponents = exponents;
  fit.params.assign(coef.data(), coef.data() + p);
  fit.residual_norm = resid;
  auto param_for = [&](double e) {
    for (std::size_t k = 0; k < exponents.size(); ++k)
      if (exponents[k] == e) return fit.params[k];
    return 0.0;
  };
  fit.a = param_for(0.0);
  fit.b = param_for(0.5);
  fit.c = param_for(1.0);
  return fit;
}

AsymptoticFit fit_sqrt_model(const std::vector<FitPoint>& points) {
  if (points.size() < 4) throw std::invalid_argument("fit_sqrt_model: need at least 4 points");
  return fit_power_model(points, {0.0, 0.5, 1.0});
}

std::vector<int> default_cutoff_grid() { return {801, 1001, 1201, 1401, 1601, 1801, 1999}; }

std::vector<int> cutoff_grid(int max_cutoff, int points) {
  if (points < 4) throw std::invalid_argument("cutoff_grid: need at least 4 points");
  if (max_cutoff < 5 * points) throw std::invalid_argument("cutoff_grid: max cutoff too small for the point count");
  const double lo = 0.4 * max_cutoff;
  std::vector<int> grid;
  for (int i = 0; i < points; ++i) {
    int r = static_cast<int>(std::lround(lo + (max_cutoff - lo) * i / (points - 1)));
    if (r % 2 == 0) r -= 1;
    if (grid.empty() || r > grid.back()) grid.push_back(r);
  }
  return grid;
}

namespace {

std::vector<FitPoint> make_points(const std::vector<int>& grid, const std::vector<double>& ys) {
  std::vector<FitPoint> pts;
  for (std::size_t i = 0; i < grid.size(); ++i) pts.emplace_back(1.0 / grid[i], ys[i]);
  return pts;
}

}  // namespace

double calibrate_uncertainty(const ShellSums& sums, const std::vector<int>& grid) {
  std::vector<double> ys;
  for (int r : grid) ys.push_back(sums.partial_alpha4_3(r));
  const AsymptoticFit fit = fit_sqrt_model(make_points(grid, ys));
  return std::abs(fit.a - alpha43_3().value);
}

Alpha33Estimate estimate_alpha3_3(const ShellSums& sums, const std::vector<int>& grid) {
  Alpha33Estimate est;
  est.grid = grid;
  for (int r : grid) {
    est.partial_alpha3_3.push_back(sums.partial_alpha3_3(r));
    est.partial_alpha4_3.push_back(sums.partial_alpha4_3(r));
  }
  est.fit = fit_sqrt_model(make_points(grid, est.partial_alpha3_3));
  est.calibration_fit = fit_sqrt_model(make_points(grid, est.partial_alpha4_3));
  est.alpha43_extrapolated = est.calibration_fit.a;
  est.calibration_error = std::abs(est.calibration_fit.a - alpha43_3().value);
  est.fit.calibrated_uncertainty = est.calibration_error;
  est.alpha3_3 = {est.fit.a, est.calibration_error, Method::extrapolated, RegulatorSpec::hard(grid.back())};
  return est;
}

Alpha33Estimate estimate_alpha3_3(const std::vector<int>& grid, int threads) {
  if (grid.empty()) throw std::invalid_argument("estimate_alpha3_3: empty grid");
  const int rmax = *std::max_element(grid.begin(), grid.end());
  const int shells = static_cast<int>(std::ceil(rmax / 2.0));
  return estimate_alpha3_3(alpha3_3_shells(shells, threads), grid);
}

}  // namespace fewbody
