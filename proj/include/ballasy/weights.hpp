#pragma once

#include <complex>
#include <vector>

#include "ballasy/errors.hpp"
#include "ballasy/geometry.hpp"

namespace ballasy {

// mu(r) = (1-r^2)^alpha * log^beta(e/(1-r^2)) * (log log(e^2/(1-r^2)))^gamma
// with declared normality exponents (decl_a, decl_b).
class NormalWeight {
 public:
  NormalWeight(double alpha, double beta, double gamma, double decl_a, double decl_b);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double decl_a() const { return a_; }
  double decl_b() const { return b_; }

  // mu(r); throws for r >= 1 or r < 0
  double operator()(double r) const;
  // mu at 1-r^2 = u; cancellation-safe entry point for boundary-refined grids
  double from_one_minus_rsq(double u) const;
  // mu at r = 1-y
  double at_y(double y) const { return from_one_minus_rsq(y * (2.0 - y)); }

 private:
  double alpha_, beta_, gamma_, a_, b_;
};

// Both monotonicity conditions of normality, tested on a boundary-refined grid
// of `grid_size` points with 1e-12 slack per step.
bool normality_check(const NormalWeight& mu, int grid_size);

// mu(|z|)/mu(|w|) <= (u_z/u_w)^a + (u_z/u_w)^b with u = 1-|.|^2.
bool lemma23_ratio_check(const NormalWeight& mu, const CPoint& z, const CPoint& w);

// g(u) = 1 + sum_{j=1..J} 2^j u^{n_j}, n_j = floor(1/(1-r_j)), mu(r_j) = 2^{-j}.
// Roots are taken at the smallest r solving the level equation; they are found
// by bisection in log2(1-r), which keeps deep levels (1-r below 1e-14)
// resolvable. Exponents are stored as doubles: beyond 2^53 only their
// magnitude matters, since those terms underflow everywhere they are used.
class GSeries {
 public:
  static GSeries build(const NormalWeight& mu, int J);

  int terms() const { return static_cast<int>(n_.size()); }
  double exponent(int j) const { return n_.at(j - 1); }  // n_j, 1-based
  double root_y(int j) const { return y_.at(j - 1); }    // 1 - r_j

  std::complex<double> eval(std::complex<double> u) const;  // |u| < 1
  double eval_real(double r) const;
  double eval_at_y(double y) const;   // g(1-y)
  double deriv(double r) const;       // g'(r), termwise
  double deriv_at_y(double y) const;  // g'(1-y)

 private:
  GSeries() = default;
  std::vector<double> n_;
  std::vector<double> y_;
};

inline GSeries build_g(const NormalWeight& mu, int J) { return GSeries::build(mu, J); }

}  // namespace ballasy
