#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Core>

#include "fewbody/coeffs.hpp"
#include "fewbody/hobasis.hpp"
#include "fewbody/summation.hpp"

namespace fewbody {

namespace {

// Shell contributions of one partial wave l to
//   sum (2l+1) K(n1,n2,l) K(n2,n3,l) K(n1,n3,l) / ((2n1+2n2+2l)(2n1+2n3+2l)),
// binned by s = n1 + l + max(n2, n3).
std::vector<CompensatedSum> alpha33_partial_wave(int l, int shells) {
  std::vector<CompensatedSum> out(shells);
  const int size = shells - l;
  if (size <= 0) return out;
  const KspTable k(l, size);
  std::vector<double> v(size);
  const double weight = 0.25 * (2 * l + 1);

  for (int n1 = 0; n1 < size; ++n1) {
    const int width = size - n1;
    for (int n = 0; n < width; ++n) {
      const int d = n1 + n + l;
      v[n] = d == 0 ? 0.0 : k(n1, n) / d;
    }
    for (int n2 = 0; n2 < width; ++n2) {
      const double* row = k.row(n2);
      const double off = n2 == 0 ? 0.0
                                 : Eigen::Map<const Eigen::VectorXd>(row, n2).dot(
                                       Eigen::Map<const Eigen::VectorXd>(v.data(), n2));
      const double vn = v[n2];
      out[n1 + l + n2] += weight * vn * (vn * row[n2] + 2.0 * off);
    }
  }
  return out;
}

}  // namespace

ShellSums alpha3_3_shells(int shells, int threads) {
  if (shells < 1) throw std::invalid_argument("alpha3_3_shells: need at least one shell");
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, shells);

  // Work is assigned round-robin by l and reduced in l order afterwards, so
  // the result does not depend on the thread count.
  std::vector<std::vector<CompensatedSum>> per_l(shells);
  auto worker = [&](int id) {
    for (int l = id; l < shells; l += threads) per_l[l] = alpha33_partial_wave(l, shells);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  ShellSums out;
  out.alpha3_3.assign(shells, 0.0);
  out.alpha4_3.assign(shells, 0.0);
  for (int s = 0; s < shells; ++s) {
    CompensatedSum acc;
    for (int l = 0; l < shells; ++l) acc += per_l[l][s].value();
    out.alpha3_3[s] = acc.value();
  }
  const double c = std::sqrt(2.0 / std::acos(-1.0));
  for (int n = 1; n < shells; ++n) {
    const double k = k_rel0(n);
    out.alpha4_3[n] = c * k * k / (4.0 * n * n);
  }
  return out;
}

}  // namespace fewbody
