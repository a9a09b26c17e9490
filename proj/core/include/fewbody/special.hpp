#pragma once

#include <array>

namespace fewbody {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Li2(z) for real z <= 1.
double dilog(double z);

// 4F3(a1..a4; b1..b3; z) summed as a power series, 0 <= z < 1.
double hyp4f3_series(const std::array<double, 4>& a, const std::array<double, 3>& b, double z);

// 1/Gamma(x); entire, zero at the non-positive integers.
double gamma_inv(double x);

}  // namespace fewbody
