#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ballasy/errors.hpp"
#include "ballasy/geometry.hpp"

namespace ballasy {

struct QuadConfig {
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  int mc_samples = 200000;
  std::uint64_t seed = 0;
};

enum class Method { adaptive, slice_reduced, monte_carlo };

const char* to_string(Method m);

struct IntegrationResult {
  double value = 0;
  double error_estimate = 0;
  long evaluations = 0;
  Method method = Method::adaptive;
};

using Fn1 = std::function<double(double)>;
using FnPolar = std::function<double(double, double)>;  // (rho, theta)
using FnPoint = std::function<double(const CPoint&)>;
using Fn1Cx = std::function<Cx(double)>;
using FnPolarCx = std::function<Cx(double, double)>;

// 1 - m e^{i phi} with the real part split as (1-m) + 2 m sin^2(phi/2); the
// caller supplies 1-m computed without cancellation.
inline Cx one_minus_polar(double m, double one_minus_m, double phi) {
  const double s = std::sin(0.5 * phi);
  return Cx(one_minus_m + 2.0 * m * s * s, -m * std::sin(phi));
}

// 1 - c rho e^{i theta} for a coefficient c = cmod e^{i carg}, |c| <= 1,
// rho <= 1; exact near the peak because 1-cmod and 1-rho carry no rounding.
inline Cx one_minus_coef_polar(double cmod, double carg, double rho, double theta) {
  const double omm = (1.0 - cmod) + cmod * (1.0 - rho);
  return one_minus_polar(cmod * rho, omm, theta + carg);
}

// ---- building blocks ------------------------------------------------------

// Adaptive Gauss-Kronrod 7-15 on [a,b]. `breakpoints` become initial segment
// boundaries (peaks of the integrand belong here). Throws QuadratureFailure
// if the segment budget runs out before the tolerance is met.
IntegrationResult adaptive_gk(const Fn1& f, double a, double b, double rel_tol,
                              int max_segments, const std::vector<double>& breakpoints = {});

// Same, but first reparameterizes [a,b] with a degree-5 polynomial map that
// clusters quadrature points at the flagged endpoints. Power-log endpoint
// singularities with exponent > -1 become mild enough for plain subdivision.
IntegrationResult adaptive_graded(const Fn1& f, double a, double b, double rel_tol,
                                  int max_segments, bool grade_left, bool grade_right);

// (1/2pi) * integral of g over [-pi, pi], adaptive, splitting at peak angles.
IntegrationResult circle_mean(const Fn1& g, double rel_tol, int max_segments,
                              const std::vector<double>& peak_angles = {});

// (1/2pi) * integral of g over [-pi, pi] by the periodic trapezoid rule with
// one Richardson step, doubling the point count until converged.
IntegrationResult periodic_mean_trapezoid(const Fn1& g, double rel_tol, long max_points);

// int_0^1 2 rho * radial(rho) * [circle_mean of theta -> kernel(rho, theta)] drho.
// Computes (1/pi) int_D radial(|mu|) K(mu) dA for kernels given in polar form.
IntegrationResult disk_radial_angular(const Fn1& radial, const FnPolar& kernel,
                                      double rel_tol, int max_segments,
                                      const std::vector<double>& peak_angles = {});

// (1/pi) int_D H dA with H in polar form.
IntegrationResult disk_mean(const FnPolar& H, double rel_tol, int max_segments,
                            const std::vector<double>& peak_angles = {});

IntegrationResult mc_sphere(const FnPoint& f, int n, const QuadConfig& cfg);
IntegrationResult mc_ball(const FnPoint& f, int n, const QuadConfig& cfg);

// Complex-valued variants: convergence is measured against the modulus mass,
// so components that integrate to zero pose no problem.
struct IntegrationResultCx {
  Cx value{0, 0};
  double error_estimate = 0;
  long evaluations = 0;
};
IntegrationResultCx circle_mean_cx(const Fn1Cx& g, double rel_tol, int max_segments,
                                   const std::vector<double>& peak_angles = {});
IntegrationResultCx disk_mean_cx(const FnPolarCx& H, double rel_tol, int max_segments,
                                 const std::vector<double>& peak_angles = {});

// ---- public engines --------------------------------------------------------

// Adaptive integral of f over (0,1); admits power-log singularities at both
// endpoints (exponents > -1).
IntegrationResult integrate_radial(const Fn1& f, const QuadConfig& cfg);

// Integral of f against the normalized surface measure of S_n. If slice_base
// is given, f must factor through <xi, slice_base>; the integral is then
// reduced to the unit disk (n >= 2) or the unit circle (n = 1). Without a
// slice base the engine falls back to Monte Carlo.
IntegrationResult integrate_sphere(const FnPoint& f, int n, const QuadConfig& cfg,
                                   const std::optional<CPoint>& slice_base = {});

// Integral of f against the normalized volume measure of B_n; same slicing
// contract, with the radial direction handled by the polar factorization.
IntegrationResult integrate_ball(const FnPoint& f, int n, const QuadConfig& cfg,
                                 const std::optional<CPoint>& slice_base = {});

// Unit vector u = w/|w| plus a unit vector orthogonal to it (n >= 2); the pair
// realizes every slice value <xi, u> = lambda on the sphere.
CPoint slice_direction(const CPoint& w);
CPoint orthogonal_unit(const CPoint& u);

}  // namespace ballasy
