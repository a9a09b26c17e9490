#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fewbody {

enum class Scheme { hard_cutoff, exponential };

// Regulator for intermediate-state sums; cutoff_ratio is omega_c / omega.
struct RegulatorSpec {
  Scheme scheme = Scheme::hard_cutoff;
  double cutoff_ratio = 0.0;

  static RegulatorSpec hard(double ratio) { return {Scheme::hard_cutoff, ratio}; }
  static RegulatorSpec exponential(double ratio) { return {Scheme::exponential, ratio}; }

  void validate() const;
  // Multiplier for a term with excitation energy de (units hbar*omega).
  double weight(double de) const;
  // Largest excitation energy that can contribute above double precision.
  double energy_limit() const;
  // Same cutoff omega_c seen from a trap of frequency omega * factor.
  RegulatorSpec rescaled(double factor) const { return {scheme, cutoff_ratio / factor}; }
};

enum class Method { analytic, direct_sum, extrapolated };

struct CoefficientValue {
  double value = 0.0;
  double uncertainty = 0.0;
  Method method = Method::analytic;
  std::optional<RegulatorSpec> regulator;
};

std::string to_string(Scheme s);
std::string to_string(Method m);

CoefficientValue alpha2_1();
CoefficientValue alpha2_12();

CoefficientValue alpha3_2();
CoefficientValue alpha3_2_sum(const RegulatorSpec& reg);

CoefficientValue alpha41_3(const RegulatorSpec& reg);
CoefficientValue alpha42_3(const RegulatorSpec& reg);

CoefficientValue alpha43_3();
// Full series with an Euler-Maclaurin estimate of the power-law tail.
CoefficientValue alpha43_3_sum();
// Regulated partial sum.
CoefficientValue alpha43_3_partial(const RegulatorSpec& reg);

enum class Alpha5Mode { hypergeometric, dilog, sum };
CoefficientValue alpha5_3(Alpha5Mode mode = Alpha5Mode::hypergeometric);

CoefficientValue beta2_2(const RegulatorSpec& reg);
// Exact resummation of the exponentially regulated series.
double beta2_2_exponential_closed(double cutoff_ratio);
// Leading large-cutoff behaviour through (omega/omega_c)^{1/2}.
double beta2_2_asymptotic(double cutoff_ratio);
// Cutoff-independent constant of beta2_2, -(2/pi)(1 - log 2).
double beta2_2_finite_part();

enum class FactorMode { direct, factorized };
CoefficientValue beta2_3(const RegulatorSpec& reg, FactorMode mode);
CoefficientValue beta3_3(const RegulatorSpec& reg, FactorMode mode);

// Per-shell contributions to the hard-cutoff triple sum for alpha3_3 and to
// alpha43_3. Shell s collects terms whose larger energy denominator is 2s.
struct ShellSums {
  std::vector<double> alpha3_3;
  std::vector<double> alpha4_3;

  int shells() const { return static_cast<int>(alpha3_3.size()); }
  // Partial sums with all denominators < cutoff_ratio.
  double partial_alpha3_3(double cutoff_ratio) const;
  double partial_alpha4_3(double cutoff_ratio) const;
};

// threads <= 0 selects std::thread::hardware_concurrency().
ShellSums alpha3_3_shells(int shells, int threads = 0);

CoefficientValue alpha3_3_partial(const RegulatorSpec& reg);

}  // namespace fewbody
