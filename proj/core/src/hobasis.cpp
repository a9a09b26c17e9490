#include "fewbody/hobasis.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_laguerre.h>

#include "fewbody/special.hpp"

namespace fewbody {

namespace {

constexpr double pi = std::numbers::pi;

void require_nonnegative(int a, int b, int c, const char* what) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument(what);
}

// ln of the squared normalization 2 Gamma(n+1) / Gamma(n+l+3/2).
double log_norm_sq(int n, int l) {
  return std::log(2.0) + log_gamma(n + 1.0) - log_gamma(n + l + 1.5);
}

}  // namespace

double orbital_energy(const Orbital& o) {
  if (!o.valid()) throw std::invalid_argument("orbital_energy: invalid quantum numbers");
  return 2.0 * o.n + o.l + 1.5;
}

int delta_eps_sp(int n1, int l1, int n2, int l2) {
  if (n1 < 0 || l1 < 0 || n2 < 0 || l2 < 0) throw std::invalid_argument("delta_eps_sp: negative quantum number");
  return 2 * n1 + 2 * n2 + l1 + l2;
}

int delta_eps(const PairState& p) {
  if (!p.a.valid() || !p.b.valid()) throw std::invalid_argument("delta_eps: invalid orbital");
  return 2 * p.a.n + p.a.l + 2 * p.b.n + p.b.l;
}

double k_sp(int n1, int n2, int l) {
  require_nonnegative(n1, n2, l, "k_sp: negative quantum number");
  if (n1 > n2) std::swap(n1, n2);  // same rounding either way round
  const double lg = log_gamma(n1 + n2 + l + 1.5) -
                    0.5 * (log_gamma(n1 + 1.0) + log_gamma(n2 + 1.0) + log_gamma(n1 + l + 1.5) +
                           log_gamma(n2 + l + 1.5)) -
                    (n1 + n2 + l) * std::log(2.0);
  return std::sqrt(2.0 / pi) * std::exp(lg);
}

namespace {

struct OracleParams {
  int n1, n2, l;
  double alpha;
};

double oracle_integrand(double r, void* p) {
  const auto* q = static_cast<const OracleParams*>(p);
  const double x = r * r;
  return gsl_sf_laguerre_n(q->n1, q->alpha, x) * gsl_sf_laguerre_n(q->n2, q->alpha, x) * std::exp(-2.0 * x) *
         std::pow(r, 2 * q->l + 2);
}

}  // namespace

double k_sp_quadrature_oracle(int n1, int n2, int l) {
  require_nonnegative(n1, n2, l, "k_sp_quadrature_oracle: negative quantum number");
  if (n1 + n2 + l > 30) throw std::domain_error("k_sp_quadrature_oracle: n1+n2+l must be <= 30");

  OracleParams params{n1, n2, l, l + 0.5};
  gsl_function f{&oracle_integrand, &params};
  const double upper = 7.0 + 2.0 * std::sqrt(n1 + n2 + l + 1.0);
  const int panels = 8 + n1 + n2 + l;

  const auto old = gsl_set_error_handler_off();
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  double total = 0.0;
  double err_total = 0.0;
  int status = GSL_SUCCESS;
  for (int i = 0; i < panels && status == GSL_SUCCESS; ++i) {
    double val = 0.0, err = 0.0;
    // EROUND only means the requested 1e-14 was not reachable; err is checked below
    status = gsl_integration_qag(&f, upper * i / panels, upper * (i + 1) / panels, 1e-17, 1e-14, 2000,
                                 GSL_INTEG_GAUSS61, ws, &val, &err);
    if (status == GSL_EROUND) status = GSL_SUCCESS;
    total += val;
    err_total += err;
  }
  gsl_integration_workspace_free(ws);
  gsl_set_error_handler(old);

  const double norm = std::exp(0.5 * (log_norm_sq(n1, l) + log_norm_sq(n2, l)));
  const double value = 4.0 / std::sqrt(pi) * norm * total;
  if (status != GSL_SUCCESS || norm * err_total > 1e-12 * std::max(1.0, std::abs(value)))
    throw std::runtime_error("k_sp_quadrature_oracle: quadrature did not converge");
  return value;
}

double k_rel0(int n) {
  if (n < 0) throw std::invalid_argument("k_rel0: negative quantum number");
  return 2.0 / std::pow(pi, 0.75) * std::exp(0.5 * (log_gamma(n + 1.5) - log_gamma(n + 1.0)));
}

double k_rel(int n, int nprime) { return std::sqrt(pi / 2.0) * (k_rel0(n) * k_rel0(nprime)); }

double k_mixed(int n, int n1) { return std::sqrt(pi / 2.0) * k_rel0(n) * k_sp(n1, 0, 0); }

KspTable::KspTable(int l, int size) : l_(l), size_(size) {
  if (l < 0 || size < 0) throw std::invalid_argument("KspTable: negative argument");
  data_.assign(static_cast<std::size_t>(size) * size, 0.0);
  if (size == 0) return;

  // K(a+1,b)/K(a,b) = (a+b+l+3/2) / (2 sqrt((a+1)(a+l+3/2)))
  auto ratio = [l](int a, int b) { return 0.5 * (a + b + l + 1.5) / std::sqrt((a + 1.0) * (a + l + 1.5)); };

  std::vector<double> first(size);
  first[0] = k_sp(0, 0, l);
  for (int b = 0; b + 1 < size; ++b) first[b + 1] = first[b] * ratio(b, 0);

  for (int b = 0; b < size; ++b) {
    double v = first[b];
    data_[static_cast<std::size_t>(b)] = v;
    for (int a = 0; a + 1 < size; ++a) {
      v *= ratio(a, b);
      data_[static_cast<std::size_t>(a + 1) * size + b] = v;
    }
  }
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b)
      data_[static_cast<std::size_t>(a) * size + b] = data_[static_cast<std::size_t>(b) * size + a];
}

}  // namespace fewbody
