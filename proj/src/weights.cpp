#include "ballasy/weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ballasy {

NormalWeight::NormalWeight(double alpha, double beta, double gamma, double decl_a, double decl_b)
    : alpha_(alpha), beta_(beta), gamma_(gamma), a_(decl_a), b_(decl_b) {
  if (!(alpha > 0)) throw DomainError("NormalWeight: alpha must be > 0");
  if (!(decl_a > 0)) throw DomainError("NormalWeight: decl_a must be > 0");
  if (!(decl_b >= decl_a)) throw DomainError("NormalWeight: decl_b must be >= decl_a");
}

double NormalWeight::from_one_minus_rsq(double u) const {
  if (!(u > 0.0) || u > 1.0) throw DomainError("NormalWeight: 1-r^2 out of (0,1]");
  const double lg = 1.0 - std::log(u);        // log(e/u) >= 1
  const double llg = std::log(2.0 - std::log(u));  // log log(e^2/u) >= log 2
  double v = alpha_ * std::log(u);
  if (beta_ != 0.0) v += beta_ * std::log(lg);
  if (gamma_ != 0.0) v += gamma_ * std::log(llg);
  return std::exp(v);
}

double NormalWeight::operator()(double r) const {
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("NormalWeight: radius out of [0,1)");
  return from_one_minus_rsq((1.0 - r) * (1.0 + r));
}

bool normality_check(const NormalWeight& mu, int grid_size) {
  if (grid_size < 100) throw DomainError("normality_check: grid_size must be >= 100");
  // geometric in 1-r: r = 1-2^-m, m from 2 to 42; the conditions are
  // asymptotic-at-the-boundary statements (the log-bearing weights are
  // monotone in the required sense only from a positive base radius on)
  std::vector<double> us;  // u = 1-r^2, decreasing
  for (int i = 0; i < grid_size; ++i) {
    const double m = 2.0 + 40.0 * i / (grid_size - 1.0);
    const double y = std::pow(2.0, -m);
    us.push_back(y * (2.0 - y));
  }

  const double tol = 1e-12;
  double prev_dec = 0, prev_inc = 0;
  bool first = true;
  for (double u : us) {
    const double w = mu.from_one_minus_rsq(u);
    const double f_dec = w / std::pow(u, mu.decl_a());  // must not increase as r grows (u falls)
    const double f_inc = w / std::pow(u, mu.decl_b());  // must not decrease
    if (!first) {
      if (f_dec > prev_dec + tol * std::max(1.0, std::abs(prev_dec))) return false;
      if (f_inc < prev_inc - tol * std::max(1.0, std::abs(prev_inc))) return false;
    }
    prev_dec = f_dec;
    prev_inc = f_inc;
    first = false;
  }
  return true;
}

bool lemma23_ratio_check(const NormalWeight& mu, const CPoint& z, const CPoint& w) {
  require_interior(z, "lemma23_ratio_check");
  require_interior(w, "lemma23_ratio_check");
  const double uz = 1.0 - z.norm_sq();
  const double uw = 1.0 - w.norm_sq();
  const double lhs = mu.from_one_minus_rsq(uz) / mu.from_one_minus_rsq(uw);
  const double q = uz / uw;
  return lhs <= std::pow(q, mu.decl_a()) + std::pow(q, mu.decl_b());
}

namespace {

constexpr double kLog2 = 0.6931471805599453;

// smallest r with mu(r) = target, reported as y = 1-r; NaN when no crossing
double smallest_root_y(const NormalWeight& mu, double target) {
  // scan in increasing r: uniform r first, then geometric y
  std::vector<double> ys;
  for (int i = 0; i < 1024; ++i) ys.push_back(1.0 - i / 1024.0);
  for (double m = 10.0; m <= 1060.0; m += 0.25) ys.push_back(std::pow(2.0, -m));
  double prev_y = ys[0];
  double prev_d = mu.at_y(prev_y) - target;
  if (prev_d == 0.0) return prev_y;
  for (size_t i = 1; i < ys.size(); ++i) {
    const double y = ys[i];
    if (!(y > 0)) break;
    const double d = mu.at_y(y) - target;
    if (d == 0.0) return y;
    if ((prev_d > 0) != (d > 0)) {
      // bisect in t = log2(y)
      double t_lo = std::log2(prev_y), t_hi = std::log2(y);
      double d_lo = prev_d;
      for (int it = 0; it < 90; ++it) {
        const double t = 0.5 * (t_lo + t_hi);
        const double dm = mu.at_y(std::pow(2.0, t)) - target;
        if ((dm > 0) == (d_lo > 0)) {
          t_lo = t;
          d_lo = dm;
        } else {
          t_hi = t;
        }
      }
      return std::pow(2.0, 0.5 * (t_lo + t_hi));
    }
    prev_y = y;
    prev_d = d;
  }
  return std::nan("");
}

}  // namespace

GSeries GSeries::build(const NormalWeight& mu, int J) {
  if (J < 1 || J > 60) throw DomainError("build_g: J must be in [1, 60]");
  GSeries g;
  g.n_.reserve(J);
  g.y_.reserve(J);
  for (int j = 1; j <= J; ++j) {
    const double y = smallest_root_y(mu, std::pow(2.0, -j));
    if (!(y > 0) || std::isnan(y))
      throw DomainError("build_g: no root of mu(r) = 2^-j for j = " + std::to_string(j));
    const double nj = std::floor(1.0 / y);
    if (!g.n_.empty() && !(nj > g.n_.back()))
      throw DomainError("build_g: exponents not strictly increasing at j = " + std::to_string(j));
    g.n_.push_back(nj);
    g.y_.push_back(y);
  }
  // monotonicity of g on a dyadic grid (positive coefficients make this a formality)
  double prev = g.eval_at_y(1.0);
  for (int m = 1; m <= std::max(4, J / 2); ++m) {
    const double cur = g.eval_at_y(std::pow(2.0, -m));
    if (cur < prev) throw DomainError("build_g: series not increasing on the check grid");
    prev = cur;
  }
  return g;
}

std::complex<double> GSeries::eval(std::complex<double> u) const {
  const double au = std::abs(u);
  if (!(au < 1.0)) throw DomainError("GSeries::eval: |u| must be < 1");
  if (au == 0.0) return {1.0, 0.0};
  const double lu = std::log(au);
  const double arg = std::arg(u);
  std::complex<double> s(1.0, 0.0);
  for (size_t i = 0; i < n_.size(); ++i) {
    const double e = (i + 1) * kLog2 + n_[i] * lu;
    if (e < -745.0) continue;
    s += std::polar(std::exp(e), n_[i] * arg);
  }
  return s;
}

double GSeries::eval_at_y(double y) const {
  if (!(y > 0.0) || y > 1.0) throw DomainError("GSeries: y out of (0,1]");
  if (y == 1.0) return 1.0;
  const double lr = std::log1p(-y);
  double s = 1.0;
  for (size_t i = 0; i < n_.size(); ++i) {
    const double e = (i + 1) * kLog2 + n_[i] * lr;
    if (e > -745.0) s += std::exp(e);
  }
  return s;
}

double GSeries::eval_real(double r) const {
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("GSeries: r out of [0,1)");
  return eval_at_y(1.0 - r);
}

double GSeries::deriv_at_y(double y) const {
  if (!(y > 0.0) || y > 1.0) throw DomainError("GSeries: y out of (0,1]");
  if (y == 1.0) return 0.0;
  const double lr = std::log1p(-y);
  double s = 0.0;
  for (size_t i = 0; i < n_.size(); ++i) {
    const double e = (i + 1) * kLog2 + (n_[i] - 1.0) * lr + std::log(n_[i]);
    if (e > -745.0) s += std::exp(e);
  }
  return s;
}

double GSeries::deriv(double r) const {
  if (!(r >= 0.0) || r >= 1.0) throw DomainError("GSeries: r out of [0,1)");
  return deriv_at_y(1.0 - r);
}

}  // namespace ballasy
