#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace fewbody::wick {

using Rational = boost::rational<long long>;

// Mode label "0" is the condensate orbital; any other label is a symbolic
// index summed over all orbitals.
inline const std::string ground = "0";

struct Op {
  std::string label;
  bool create = false;
};

inline Op ann(std::string label) { return {std::move(label), false}; }
inline Op cre(std::string label) { return {std::move(label), true}; }

using OpString = std::vector<Op>;

// Polynomial in N stored as coefficients of falling factorials:
// p(N) = sum_m ff[m] * N(N-1)...(N-m+1).
class NPoly {
 public:
  NPoly() = default;
  explicit NPoly(std::vector<Rational> ff);

  static NPoly constant(Rational c);
  static NPoly falling(int m);                 // N(N-1)...(N-m+1)
  static NPoly shifted_falling(int shift, int m);  // (N-s)(N-s-1)...(N-s-m+1)
  static NPoly from_monomial(const std::vector<Rational>& mono);

  std::vector<Rational> monomial() const;
  const std::vector<Rational>& ff() const { return ff_; }
  Rational coefficient(int m) const;
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  Rational operator()(long long n) const;

  NPoly operator+(const NPoly& o) const;
  NPoly operator*(const NPoly& o) const;
  NPoly operator*(Rational c) const;
  bool operator==(const NPoly& o) const;

 private:
  void trim();
  std::vector<Rational> ff_;
};

// One complete-contraction term: product of deltas over the contracted
// labels, uncontracted labels pinned to the condensate, times the
// normal-ordered condensate expectation.
struct WickTerm {
  std::vector<std::pair<std::string, std::string>> deltas;
  std::vector<std::string> zeroed;
  long long multiplicity = 1;
  NPoly poly;
  int contractions = 0;
};

struct WickResult {
  std::vector<WickTerm> terms;
};

struct ExpectationOptions {
  // The state holds N - deficit condensate particles.
  int deficit = 0;
  // Label pairs that may not both be the condensate (sums written "ij != 00").
  std::vector<std::pair<std::string, std::string>> nonzero_pairs;
};

WickResult expectation(const OpString& ops, const ExpectationOptions& opts = {});

// Merge terms related by relabelings from `group` (each a full label map;
// the identity is implied).
WickResult combine(const WickResult& r, const std::vector<std::map<std::string, std::string>>& group);

// Coefficients u_m with p(N) = sum_m u_m * binom(N, m).
std::map<int, Rational> mbody_decompose(const NPoly& p);
NPoly mbody_reconstruct(const std::map<int, Rational>& u);

// Products of contact vertices K_{ab;cd} over energy denominators.
struct KPattern {
  std::vector<std::array<std::string, 4>> vertices;
  std::vector<std::array<std::string, 2>> denominators;
};

KPattern parse_pattern(const std::string& text);  // e.g. "00ij ijkl kl00 / ij kl"
std::string canonical_form(const KPattern& p);
KPattern substitute(const KPattern& p, const WickTerm& t);

// One energy contribution: scalar * outer(N) * sum pattern * <ops>.
struct EnergyTerm {
  std::string name;
  std::string coupling;  // power-counting tag, e.g. "xi^3"
  Rational scalar{1};
  NPoly outer;
  OpString ops;
  ExpectationOptions options;
  KPattern pattern;
};

struct PrefactorRow {
  std::string source;
  std::string coupling;
  std::string coefficient;  // named sum, or "?<canonical>" if unrecognized
  int m = 0;
  Rational prefactor;  // contribution to U_m in units of coefficient * coupling
};

// Named coefficient sums keyed by canonical pattern.
std::map<std::string, std::string> coefficient_catalog();

std::vector<PrefactorRow> decompose(const EnergyTerm& term, const std::map<std::string, std::string>& catalog);

// Energy terms through third order built from the interaction template.
std::vector<EnergyTerm> perturbation_terms();

struct PrefactorTable {
  std::vector<PrefactorRow> rows;  // per source
  // ("<coupling> <coefficient>", m) -> prefactor summed over sources; cancelled entries stay as 0
  std::map<std::pair<std::string, int>, Rational> net;
};

PrefactorTable third_order_prefactors();

}  // namespace fewbody::wick
