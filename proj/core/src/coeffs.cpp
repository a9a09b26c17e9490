#include "fewbody/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fewbody/hobasis.hpp"
#include "fewbody/special.hpp"
#include "fewbody/summation.hpp"

namespace fewbody {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double ln2 = std::numbers::ln2;

// Single-particle s-wave elements K(n,0,0) fall off like 2^{-n}; past this
// index they are below 1e-27 relative to the leading term.
constexpr int geometric_terms = 96;

CoefficientValue analytic(double v) { return {v, 0.0, Method::analytic, std::nullopt}; }

CoefficientValue summed(double v, const RegulatorSpec& reg) { return {v, 0.0, Method::direct_sum, reg}; }

int max_index(const RegulatorSpec& reg, int cap) {
  const double e = reg.energy_limit();
  return std::min(cap, static_cast<int>(std::ceil(e / 2.0)));
}

}  // namespace

void RegulatorSpec::validate() const {
  if (!std::isfinite(cutoff_ratio) || cutoff_ratio < 2.0)
    throw std::invalid_argument("RegulatorSpec: cutoff_ratio must be finite and >= 2");
}

double RegulatorSpec::weight(double de) const {
  if (scheme == Scheme::hard_cutoff) return de < cutoff_ratio ? 1.0 : 0.0;
  return std::exp(-de / cutoff_ratio);
}

double RegulatorSpec::energy_limit() const {
  return scheme == Scheme::hard_cutoff ? cutoff_ratio : 40.0 * cutoff_ratio;
}

std::string to_string(Scheme s) { return s == Scheme::hard_cutoff ? "hard-cutoff" : "exponential"; }

std::string to_string(Method m) {
  switch (m) {
    case Method::analytic:
      return "analytic";
    case Method::direct_sum:
      return "direct-sum";
    case Method::extrapolated:
      return "extrapolated";
  }
  return "unknown";
}

CoefficientValue alpha2_1() { return analytic(std::sqrt(2.0 / pi)); }

CoefficientValue alpha2_12() { return analytic(0.75 * std::sqrt(2.0 / pi)); }

CoefficientValue alpha3_2() {
  return analytic(2.0 / pi * (2.0 * std::sqrt(3.0) / 3.0 + std::log(8.0 - 4.0 * std::sqrt(3.0)) - 1.0));
}

CoefficientValue alpha3_2_sum(const RegulatorSpec& reg) {
  reg.validate();
  const int nmax = max_index(reg, geometric_terms);
  const KspTable k(0, nmax + 1);
  CompensatedSum s;
  for (int n = 1; n <= nmax; ++n) s += k(n, 0) * k(n, 0) / (2.0 * n) * reg.weight(2.0 * n);
  return summed(s.value(), reg);
}

CoefficientValue alpha41_3(const RegulatorSpec& reg) {
  reg.validate();
  const int nmax = max_index(reg, geometric_terms);
  const KspTable k(0, nmax + 1);
  CompensatedSum s;
  // shell = n1 + n2, i.e. the larger denominator 2(n1+n2)
  for (int shell = 1; shell <= nmax; ++shell) {
    for (int n1 = 1; n1 <= shell; ++n1) {
      const int n2 = shell - n1;
      const double w = reg.weight(2.0 * n1) * reg.weight(2.0 * shell);
      if (w == 0.0) continue;
      s += w * k(n1, 0) * k(n2, 0) * k(n1, n2) / (4.0 * n1 * shell);
    }
  }
  return summed(s.value(), reg);
}

CoefficientValue alpha42_3(const RegulatorSpec& reg) {
  reg.validate();
  const int nmax = max_index(reg, geometric_terms);
  const KspTable k(0, nmax + 1);
  CompensatedSum s;
  for (int shell = 2; shell <= 2 * nmax; ++shell) {
    for (int n1 = std::max(1, shell - nmax); n1 <= std::min(nmax, shell - 1); ++n1) {
      const int n2 = shell - n1;
      const double w = reg.weight(2.0 * n1) * reg.weight(2.0 * n2);
      if (w == 0.0) continue;
      s += w * k(n1, 0) * k(n1, n2) * k(n2, 0) / (4.0 * n1 * n2);
    }
  }
  return summed(s.value(), reg);
}

CoefficientValue alpha43_3() { return analytic(std::pow(2.0 / pi, 1.5) * (pi * pi / 24.0 + ln2 - 0.5 * ln2 * ln2)); }

namespace {

double alpha43_term(int n) {
  const double k = k_rel0(n);
  return std::sqrt(2.0 / pi) * k * k / (4.0 * n * n);
}

}  // namespace

CoefficientValue alpha43_3_sum() {
  constexpr int nmax = 4000;
  CompensatedSum s;
  for (int n = 1; n <= nmax; ++n) s += alpha43_term(n);

  // Terms behave as C t^{-3/2} (1 + 3/(8t) - 7/(128t^2) + 9/(1024t^3) + ...).
  const double c = std::sqrt(2.0 / pi) / std::pow(pi, 1.5);
  const double coef[4] = {1.0, 3.0 / 8.0, -7.0 / 128.0, 9.0 / 1024.0};
  const double t = nmax;
  double integral = 0.0, f = 0.0, f1 = 0.0, f3 = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double p = 1.5 + k;
    integral += coef[k] * std::pow(t, 1.0 - p) / (p - 1.0);
    f += coef[k] * std::pow(t, -p);
    f1 += -coef[k] * p * std::pow(t, -p - 1.0);
    f3 += -coef[k] * p * (p + 1.0) * (p + 2.0) * std::pow(t, -p - 3.0);
  }
  // sum_{n > N} f(n) by Euler-Maclaurin about N
  const double tail = c * (integral - 0.5 * f - f1 / 12.0 + f3 / 720.0);
  s += tail;
  return {s.value(), 1e-12, Method::direct_sum, std::nullopt};
}

CoefficientValue alpha43_3_partial(const RegulatorSpec& reg) {
  reg.validate();
  const int nmax = max_index(reg, 1 << 26);
  CompensatedSum s;
  for (int n = 1; n <= nmax; ++n) {
    const double w = reg.weight(2.0 * n);
    if (w == 0.0) break;
    s += w * w * alpha43_term(n);
  }
  return summed(s.value(), reg);
}

CoefficientValue alpha5_3(Alpha5Mode mode) {
  switch (mode) {
    case Alpha5Mode::hypergeometric:
      return analytic(3.0 / (4.0 * std::pow(2.0 * pi, 1.5)) *
                      hyp4f3_series({1.0, 1.0, 1.0, 2.5}, {2.0, 2.0, 2.0}, 0.25));
    case Alpha5Mode::dilog: {
      const double s3 = std::sqrt(3.0);
      const double lg = std::log(1.0 + s3 / 2.0);
      return analytic(std::pow(2.0 / pi, 1.5) *
                      (0.5 * dilog(0.5 - s3 / 4.0) - lg - 0.25 * (lg - ln2) * (lg - ln2) + ln2));
    }
    case Alpha5Mode::sum: {
      // Terms shrink by 1/4 per step, so the truncation error is far below
      // rounding once K(n,0,0)^2 underflows the running sum.
      const KspTable k(0, geometric_terms + 1);
      CompensatedSum s;
      for (int n = 1; n <= geometric_terms; ++n) s += k(n, 0) * k(n, 0) / (4.0 * n * n);
      return {std::sqrt(2.0 / pi) * s.value(), 1e-15, Method::direct_sum, std::nullopt};
    }
  }
  throw std::invalid_argument("alpha5_3: unknown mode");
}

CoefficientValue beta2_2(const RegulatorSpec& reg) {
  reg.validate();
  const int nmax = max_index(reg, 1 << 26);
  CompensatedSum s;
  for (int n = 1; n <= nmax; ++n) {
    const double w = reg.weight(2.0 * n);
    if (w == 0.0) break;
    const double k = k_rel0(n);
    s += w * k * k / (2.0 * n);
  }
  return summed(s.value(), reg);
}

double beta2_2_exponential_closed(double cutoff_ratio) {
  RegulatorSpec::exponential(cutoff_ratio).validate();
  // sum_n Gamma(n+3/2)/(n Gamma(n+1)) t^n resums to elementary functions
  const double s = std::sqrt(-std::expm1(-2.0 / cutoff_ratio));
  return 2.0 / pi * (1.0 / s - 1.0 + std::log(2.0 / (1.0 + s)));
}

double beta2_2_asymptotic(double cutoff_ratio) {
  return 2.0 / pi * (std::sqrt(cutoff_ratio / 2.0) - (1.0 - ln2) - 1.5 / std::sqrt(2.0 * cutoff_ratio));
}

double beta2_2_finite_part() { return -2.0 / pi * (1.0 - ln2); }

CoefficientValue beta2_3(const RegulatorSpec& reg, FactorMode mode) {
  reg.validate();
  if (mode == FactorMode::factorized) {
    const double b = beta2_2(reg).value;
    return summed(b * b / alpha2_1().value, reg);
  }
  const int nmax = max_index(reg, 1 << 20);
  std::vector<double> k0(nmax + 1), w(nmax + 1);
  for (int n = 1; n <= nmax; ++n) {
    k0[n] = k_rel0(n);
    w[n] = reg.weight(2.0 * n);
  }
  CompensatedSum s;
  for (int shell = 2; shell <= 2 * nmax; ++shell) {
    for (int n = std::max(1, shell - nmax); n <= std::min(nmax, shell - 1); ++n) {
      const int np = shell - n;
      const double ww = w[n] * w[np];
      if (ww == 0.0) continue;
      s += ww * k0[n] * k_rel(n, np) * k0[np] / (4.0 * n * np);
    }
  }
  return summed(s.value(), reg);
}

CoefficientValue beta3_3(const RegulatorSpec& reg, FactorMode mode) {
  reg.validate();
  if (mode == FactorMode::factorized)
    return summed(alpha3_2_sum(reg).value * beta2_2(reg).value / alpha2_1().value, reg);

  const int nmax = max_index(reg, 1 << 20);
  const int n1max = max_index(reg, geometric_terms);
  std::vector<double> ksp(n1max + 1);
  for (int n1 = 1; n1 <= n1max; ++n1) ksp[n1] = k_sp(n1, 0, 0);
  CompensatedSum s;
  for (int shell = 2; shell <= nmax + n1max; ++shell) {
    for (int n1 = std::max(1, shell - nmax); n1 <= std::min(n1max, shell - 1); ++n1) {
      const int n = shell - n1;
      const double ww = reg.weight(2.0 * n) * reg.weight(2.0 * n1);
      if (ww == 0.0) continue;
      s += ww * k_rel0(n) * k_mixed(n, n1) * ksp[n1] / (4.0 * n * n1);
    }
  }
  return summed(s.value(), reg);
}

double ShellSums::partial_alpha3_3(double cutoff_ratio) const {
  const int last = static_cast<int>(std::ceil(cutoff_ratio / 2.0)) - 1;  // 2s < ratio
  if (last >= shells()) throw std::out_of_range("ShellSums: cutoff beyond computed shells");
  CompensatedSum s;
  for (int i = 0; i <= last; ++i) s += alpha3_3[i];
  return s.value();
}

double ShellSums::partial_alpha4_3(double cutoff_ratio) const {
  const int last = static_cast<int>(std::ceil(cutoff_ratio / 2.0)) - 1;
  if (last >= shells()) throw std::out_of_range("ShellSums: cutoff beyond computed shells");
  CompensatedSum s;
  for (int i = 0; i <= last; ++i) s += alpha4_3[i];
  return s.value();
}

CoefficientValue alpha3_3_partial(const RegulatorSpec& reg) {
  reg.validate();
  if (reg.scheme != Scheme::hard_cutoff) throw std::invalid_argument("alpha3_3_partial: hard cutoff required");
  const int shells = static_cast<int>(std::ceil(reg.cutoff_ratio / 2.0));
  const ShellSums sums = alpha3_3_shells(shells);
  return summed(sums.partial_alpha3_3(reg.cutoff_ratio), reg);
}

}  // namespace fewbody
