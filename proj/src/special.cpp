#include "ballasy/special.hpp"

#include <cmath>

#include "ballasy/errors.hpp"

namespace ballasy {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series and the shifted base, valid for x > 0.
double lanczos_log(double x, double* base_out) {
  double z = x - 1.0;
  double s = kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) s += kLanczosCoef[i] / (z + i);
  const double base = z + kLanczosG + 0.5;
  *base_out = base;
  return 0.5 * std::log(2.0 * M_PI) + std::log(s);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0)) throw DomainError("log_gamma: argument must be positive");
  double base;
  const double lg = lanczos_log(x, &base);
  return lg + (x - 0.5) * std::log(base) - base;
}

double gamma_fn(double x) {
  if (!(x > 0)) throw DomainError("gamma_fn: argument must be positive");
  if (x < 0.5) {
    // reflection keeps the series argument away from 0
    return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
  }
  double base;
  const double lg = lanczos_log(x, &base);
  return std::exp(lg) * std::pow(base, x - 0.5) * std::exp(-base);
}

double beta_fn(double a, double b) {
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

}  // namespace ballasy
