#include "fewbody/special.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_dilog.h>
#include <gsl/gsl_sf_gamma.h>

namespace fewbody {

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double dilog(double z) {
  if (!(z <= 1.0)) throw std::domain_error("dilog: argument must be <= 1");
  gsl_sf_result r;
  const auto old = gsl_set_error_handler_off();
  const int status = gsl_sf_dilog_e(z, &r);
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS) throw std::runtime_error("dilog: evaluation failed");
  return r.val;
}

double hyp4f3_series(const std::array<double, 4>& a, const std::array<double, 3>& b, double z) {
  if (!(z >= 0.0 && z < 1.0)) throw std::domain_error("hyp4f3_series: z must lie in [0,1)");
  if (z == 0.0) return 1.0;
  for (double bi : b)
    if (bi <= 0.0 && std::floor(bi) == bi) throw std::domain_error("hyp4f3_series: non-positive integer lower parameter");
  return boost::math::hypergeometric_pFq({a[0], a[1], a[2], a[3]}, {b[0], b[1], b[2]}, z);
}

double gamma_inv(double x) { return gsl_sf_gammainv(x); }

}  // namespace fewbody
