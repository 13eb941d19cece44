#pragma once

namespace ballasy {

// Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
double gamma_fn(double x);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), a,b > 0.
double beta_fn(double a, double b);

}  // namespace ballasy
