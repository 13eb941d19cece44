#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ballasy/quadrature.hpp"
#include "ballasy/weights.hpp"

namespace ballasy {

struct SpaceParams {
  double p;
  double s;
  NormalWeight mu;
  NormalWeight nu;
  int n;

  SpaceParams(double p_, double s_, NormalWeight mu_, NormalWeight nu_, int n_);
};

// Catalog of analytic test functions with exact gradients.
class HoloFunction {
 public:
  enum class Tag {
    constant,     // c
    coordinate,   // z_l^m
    kernel_power, // (1 - <z,w0>)^{-gamma}
    log_kernel,   // log(e/(1 - <z,w0>))
    thm34_fw,     // the vanishing-at-w multiplier test function
    cor36_gw,     // the squared log-antiderivative test function
    note2_psi1,   // exp((z1+1)/(z1-1))
    note2_psi2,   // log log(e^2/(1-z1))
    note2_psi3,   // log log log(e^4/(1-z1))
  };

  static HoloFunction constant(int n, Cx c);
  static HoloFunction coordinate(int n, int axis, int power);
  static HoloFunction kernel_power(CPoint w0, double gamma_exp);
  static HoloFunction log_kernel(CPoint w0);
  static HoloFunction thm34_fw(CPoint w, const NormalWeight& mu, double p, double s);
  static HoloFunction cor36_gw(CPoint w, double beta);
  static HoloFunction note2_psi1(int n);
  static HoloFunction note2_psi2(int n);
  static HoloFunction note2_psi3(int n);

  Tag tag() const { return tag_; }
  int dim() const { return n_; }
  std::string name() const;

  Cx value(const CPoint& z) const;
  CPoint gradient(const CPoint& z) const;
  double gradient_norm(const CPoint& z) const;

  // the same function multiplied by a scalar
  HoloFunction scaled_by(Cx c) const;

  // the direction u such that value and gradient factor through <z,u>;
  // empty for constants
  std::optional<CPoint> slice_axis() const;

  // |grad f| at z = rho e^{i theta} * slice_axis(), evaluated through the
  // cancellation-free polar form of 1 - <z, w0>; the quadrature paths that
  // push nodes within 1e-10 of a boundary singularity rely on this.
  double gradient_norm_line(double rho, double theta) const;

 private:
  HoloFunction() = default;
  Cx value_unscaled(const CPoint& z) const;
  CPoint gradient_unscaled(const CPoint& z) const;
  Tag tag_ = Tag::constant;
  int n_ = 1;
  Cx const_ = 0;
  int axis_ = 0;
  int power_ = 0;
  CPoint w0_;
  double gamma_ = 0;
  double beta_ = 0;
  double coef_ = 1;  // fw: (1-|w|^2)^{1+b+s/p}/mu(|w|)
  double e0_ = 0;    // fw: b + n/p
  Cx scale_ = Cx(1, 0);
};

// Boundary-refined evaluation grid: shells r = 1-y plus the center when
// include_center is set. For n = 1 the multiplier grids add per-shell angles
// coupled to the shell depth (theta ~ sqrt(y)), where the tangential blow-ups
// of the counterexample functions live.
struct BallGrid {
  int n = 1;
  std::vector<double> shell_y;  // decreasing toward 0
  std::vector<CPoint> directions;
  bool include_center = true;
  bool coupled_angles = false;

  struct Point {
    CPoint z;
    double y;   // 1-|z|; 1 at the center
    int shell;  // -1 for the center
  };
  std::vector<Point> points() const;

  static BallGrid norm_grid(int n, int max_m = 12);
  static BallGrid multiplier_grid(int n, int max_m = 44);
};

// The local integral of Definition 1.2 at a fixed w:
//   int_Bn (1-|w|^2)^s |grad f(z)|^p / |1-<z,w>|^{2s} * mu^p(|z|)/(1-|z|^2) dv(z).
double fpms_local(const HoloFunction& f, const CPoint& w, const SpaceParams& sp,
                  const QuadConfig& cfg);

// |f(0)| + (max over the w-grid of fpms_local)^{1/p}; a grid lower bound for
// the true norm.
double fpms_norm(const HoloFunction& f, const SpaceParams& sp, const BallGrid& wgrid,
                 const QuadConfig& cfg);

// |f(0)| + max over the grid of nu(|z|) |grad f(z)|.
double bloch_norm(const HoloFunction& f, const NormalWeight& nu, const BallGrid& zgrid);

// max over the grid of |grad f(w)| (1-|w|^2)^{(n-s)/p} mu(|w|) / fpms_norm.
double lemma24_check(const HoloFunction& f, const SpaceParams& sp, const BallGrid& wgrid,
                     const QuadConfig& cfg);

// (M, M') with M = sup mu1|h|/mu2 and M' = sup (1-|z|^2) mu1 |grad h| / mu2.
std::pair<double, double> prop33_check(const HoloFunction& h, const NormalWeight& mu1,
                                       const NormalWeight& mu2, const BallGrid& zgrid);

struct CriterionRecord {
  std::string id;
  double value = 0;
  bool divergence = false;
  std::vector<double> shell_sup;
};

struct MultiplierReport {
  std::vector<CriterionRecord> criteria;  // 3.8, 3.9, 3.10, 3.11, 3.12, hinf
  int shells = 0;
  int ref_shell = 0;
  int n = 1;

  const CriterionRecord& at(const std::string& id) const;
  std::string to_json() const;
};

// Grid suprema of the multiplier criteria. The divergence flag compares the
// deepest shell against a fixed reference shell (y = 2^-3): logarithmic
// blow-ups double over that span on the default grid depth, while convergent
// quantities stay within a constant factor of their limit.
MultiplierReport multiplier_criteria(const HoloFunction& psi, const SpaceParams& sp,
                                     const BallGrid& zgrid);

// (reproduced, direct): the weighted reproducing integral of f against the
// kernel (1-<z,w>)^{-(n+1+alpha)} with dv_alpha, versus f(z) itself.
std::pair<Cx, Cx> bergman_reproduce(const HoloFunction& f, double alpha, const CPoint& z,
                                    const QuadConfig& cfg);

// Ratio window (min, max over shells) of 1 + int_0^r mu^{-1} (1-rho^2)^{(s-n)/p} drho
// against mu^{-1}(r) (1-r^2)^{1+(s-n)/p}.
std::pair<double, double> thm34_hypothesis_window(const NormalWeight& mu, double p, double s,
                                                  int n, int max_m, const QuadConfig& cfg);

// sup over the grid of nu(|z|) |grad psi(z)| int_0^{|z|} mu^{-1}(rho) (1-rho^2)^{(s-n)/p} drho.
double cor35_criterion_sup(const HoloFunction& psi, const NormalWeight& nu,
                           const NormalWeight& mu, double p, double s, const BallGrid& zgrid,
                           const QuadConfig& cfg);

}  // namespace ballasy
