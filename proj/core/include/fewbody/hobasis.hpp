#pragma once

#include <cstddef>
#include <vector>

namespace fewbody {

// Single-particle oscillator orbital; energies are in units of hbar*omega.
struct Orbital {
  int n = 0;
  int l = 0;
  int m = 0;

  bool valid() const { return n >= 0 && l >= 0 && m >= -l && m <= l; }
};

double orbital_energy(const Orbital& o);
inline constexpr double ground_energy = 1.5;

// Two-particle excitation energy relative to both particles in (0,0,0).
int delta_eps_sp(int n1, int l1, int n2, int l2);

enum class PairBasis { single_particle, rel_com };

// Pair of quantum numbers; for rel_com, `a` is the relative and `b` the
// center-of-mass orbital.
struct PairState {
  PairBasis basis = PairBasis::single_particle;
  Orbital a;
  Orbital b;
};

int delta_eps(const PairState& p);

// Contact-interaction matrix element between pair states with l1 = l2 = l.
double k_sp(int n1, int n2, int l);

// Quadrature over the radial integral definition; test oracle only.
double k_sp_quadrature_oracle(int n1, int n2, int l);

// Relative-motion matrix elements with the center of mass in its ground state.
double k_rel0(int n);
double k_rel(int n, int nprime);

// Mixed relative / single-particle element.
double k_mixed(int n, int n1);

// Dense symmetric table of k_sp(a, b, l) for a, b < size at fixed l, built
// with the ratio recurrence in a (no per-element gamma calls).
class KspTable {
 public:
  KspTable(int l, int size);

  int l() const { return l_; }
  int size() const { return size_; }
  double operator()(int a, int b) const { return data_[static_cast<std::size_t>(a) * size_ + b]; }
  const double* row(int a) const { return data_.data() + static_cast<std::size_t>(a) * size_; }

 private:
  int l_;
  int size_;
  std::vector<double> data_;
};

}  // namespace fewbody
