#pragma once

#include <utility>
#include <vector>

#include "fewbody/coeffs.hpp"

namespace fewbody {

// y = sum_k params[k] * x^{exponents[k]}; for the sqrt model a, b, c are the
// coefficients of 1, x^{1/2}, x.
struct AsymptoticFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual_norm = 0.0;
  double calibrated_uncertainty = 0.0;
  std::vector<double> exponents;
  std::vector<double> params;

  double operator()(double x) const;
};

using FitPoint = std::pair<double, double>;

// Unweighted least squares via column-pivoted Householder QR.
AsymptoticFit fit_power_model(const std::vector<FitPoint>& points, const std::vector<double>& exponents);
AsymptoticFit fit_sqrt_model(const std::vector<FitPoint>& points);

// Odd cutoff ratios sit halfway between the even-valued steps of the
// hard-cutoff partial sums.
std::vector<int> default_cutoff_grid();
std::vector<int> cutoff_grid(int max_cutoff, int points = 7);

struct Alpha33Estimate {
  CoefficientValue alpha3_3;
  AsymptoticFit fit;
  AsymptoticFit calibration_fit;
  double alpha43_extrapolated = 0.0;
  double calibration_error = 0.0;
  std::vector<int> grid;
  std::vector<double> partial_alpha3_3;
  std::vector<double> partial_alpha4_3;
};

// |extrapolated alpha43_3 - analytic| for the given grid.
double calibrate_uncertainty(const ShellSums& sums, const std::vector<int>& grid);

Alpha33Estimate estimate_alpha3_3(const ShellSums& sums, const std::vector<int>& grid);
Alpha33Estimate estimate_alpha3_3(const std::vector<int>& grid = default_cutoff_grid(), int threads = 0);

}  // namespace fewbody
