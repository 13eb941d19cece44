#include "ballasy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "ballasy/rng.hpp"

namespace ballasy {

const char* to_string(Method m) {
  switch (m) {
    case Method::adaptive: return "adaptive";
    case Method::slice_reduced: return "slice-reduced";
    case Method::monte_carlo: return "monte-carlo";
  }
  return "?";
}

namespace {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class T>
struct Segment {
  double a, b;
  T value;
  double err, absval;
  bool operator<(const Segment& o) const { return err < o.err; }
};

template <class T>
struct GkOut {
  T value;
  double err, absval;
};

template <class T, class F>
GkOut<T> gk15(const F& f, double a, double b, long* evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fv[15];
  // nodes ordered: center index 7, pairs near endpoints first
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  *evals += 15;

  T kron = kWgk[7] * fv[7];
  double absk = kWgk[7] * std::abs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    kron += kWgk[i] * (fv[i] + fv[14 - i]);
    absk += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
  }
  T gauss = kWg[3] * fv[7];
  for (int i = 0; i < 3; ++i) gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

  GkOut<T> o;
  o.value = kron * h;
  o.absval = absk * std::abs(h);
  const double diff = std::abs(kron - gauss) * std::abs(h);
  // QUADPACK-style sharpening of the raw |K - G| estimate
  o.err = diff;
  if (o.absval > 0 && diff > 0) {
    const double scaled = std::pow(200.0 * diff / o.absval, 1.5) * o.absval;
    if (scaled < diff) o.err = scaled;
  }
  return o;
}

template <class T>
struct CoreResult {
  T value;
  double err = 0;
  long evals = 0;
};

template <class T, class F>
CoreResult<T> adaptive_core_t(const F& f, const std::vector<double>& edges, double rel_tol,
                              int max_segments) {
  long evals = 0;
  std::priority_queue<Segment<T>> heap;
  T total{};
  double total_err = 0, total_abs = 0;
  int count = 0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    GkOut<T> o = gk15<T>(f, edges[i], edges[i + 1], &evals);
    heap.push({edges[i], edges[i + 1], o.value, o.err, o.absval});
    total += o.value;
    total_err += o.err;
    total_abs += o.absval;
    ++count;
  }
  const double floor_abs = 1e-305;
  auto target = [&] { return rel_tol * std::max(total_abs, floor_abs); };
  while (total_err > target() && count < max_segments && !heap.empty()) {
    Segment<T> s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) {
      // interval exhausted at machine precision; accept its estimate as-is
      total_err -= s.err;
      continue;
    }
    GkOut<T> l = gk15<T>(f, s.a, mid, &evals);
    GkOut<T> r = gk15<T>(f, mid, s.b, &evals);
    total += l.value + r.value - s.value;
    total_err += l.err + r.err - s.err;
    total_abs += l.absval + r.absval - s.absval;
    heap.push({s.a, mid, l.value, l.err, l.absval});
    heap.push({mid, s.b, r.value, r.err, r.absval});
    ++count;
  }
  if (total_err > target() && !heap.empty()) {
    throw QuadratureFailure("adaptive quadrature did not converge within the subdivision budget",
                            std::abs(total), total_err, evals);
  }
  CoreResult<T> res;
  res.value = total;
  res.err = std::max(total_err, 0.0);
  res.evals = evals;
  return res;
}

IntegrationResult adaptive_core(const Fn1& f, const std::vector<double>& edges, double rel_tol,
                                int max_segments) {
  const CoreResult<double> r = adaptive_core_t<double>(f, edges, rel_tol, max_segments);
  IntegrationResult res;
  res.value = r.value;
  res.error_estimate = r.err;
  res.evaluations = r.evals;
  res.method = Method::adaptive;
  return res;
}

std::vector<double> make_edges(double a, double b, const std::vector<double>& breakpoints) {
  std::vector<double> e;
  e.push_back(a);
  for (double x : breakpoints)
    if (x > a && x < b) e.push_back(x);
  e.push_back(b);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

// Degree-5 polynomial endpoint grading on [0,1].
struct GradeMap {
  bool left, right;
  double operator()(double t, double* deriv) const {
    if (left && right) {
      // phi = t^5 / (t^5 + (1-t)^5)
      const double t5 = std::pow(t, 5), s5 = std::pow(1.0 - t, 5);
      const double d = t5 + s5;
      *deriv = 5.0 * std::pow(t * (1.0 - t), 4) / (d * d);
      return t5 / d;
    }
    if (left) {
      *deriv = 5.0 * std::pow(t, 4);
      return std::pow(t, 5);
    }
    if (right) {
      *deriv = 5.0 * std::pow(1.0 - t, 4);
      return 1.0 - std::pow(1.0 - t, 5);
    }
    *deriv = 1.0;
    return t;
  }
};

}  // namespace

IntegrationResult adaptive_gk(const Fn1& f, double a, double b, double rel_tol,
                              int max_segments, const std::vector<double>& breakpoints) {
  return adaptive_core(f, make_edges(a, b, breakpoints), rel_tol, max_segments);
}

IntegrationResult adaptive_graded(const Fn1& f, double a, double b, double rel_tol,
                                  int max_segments, bool grade_left, bool grade_right) {
  const GradeMap map{grade_left, grade_right};
  const double len = b - a;
  auto g = [&](double t) {
    double dphi;
    const double u = map(t, &dphi);
    const double x = a + len * u;
    // the sliver where x rounds onto an endpoint is unrepresentable; treat it
    // as zero mass (of order eps^{delta+1} for the admitted exponent class)
    if (x <= a || x >= b) return 0.0;
    return f(x) * len * dphi;
  };
  return adaptive_core(g, {0.0, 0.5, 1.0}, rel_tol, max_segments);
}

IntegrationResult circle_mean(const Fn1& g, double rel_tol, int max_segments,
                              const std::vector<double>& peak_angles) {
  std::vector<double> brk;
  for (double p : peak_angles) {
    double q = std::remainder(p, 2.0 * M_PI);
    brk.push_back(q);
  }
  auto f = [&](double th) { return g(th); };
  IntegrationResult r = adaptive_core(f, make_edges(-M_PI, M_PI, brk), rel_tol, max_segments);
  r.value /= 2.0 * M_PI;
  r.error_estimate /= 2.0 * M_PI;
  return r;
}

IntegrationResult periodic_mean_trapezoid(const Fn1& g, double rel_tol, long max_points) {
  long n = 16;
  long evals = 0;
  auto mean = [&](long k) {
    double s = 0;
    for (long i = 0; i < k; ++i) s += g(-M_PI + 2.0 * M_PI * i / k);
    evals += k;
    return s / k;
  };
  double prev = mean(n);
  while (true) {
    n *= 2;
    const double cur = mean(n);
    const double diff = std::abs(cur - prev);
    if (diff <= rel_tol * std::max(std::abs(cur), 1e-305) || n >= max_points) {
      IntegrationResult r;
      r.value = (4.0 * cur - prev) / 3.0;  // one Richardson step
      r.error_estimate = diff;
      r.evaluations = evals;
      r.method = Method::slice_reduced;
      if (diff > rel_tol * std::max(std::abs(cur), 1e-305) && n >= max_points)
        throw QuadratureFailure("periodic trapezoid did not converge", r.value, diff, evals);
      return r;
    }
    prev = cur;
  }
}

IntegrationResult disk_radial_angular(const Fn1& radial, const FnPolar& kernel,
                                      double rel_tol, int max_segments,
                                      const std::vector<double>& peak_angles) {
  long inner_evals = 0;
  double inner_rel_err = 0;
  const double inner_tol = rel_tol * 0.2;
  auto outer = [&](double rho) {
    const double w = 2.0 * rho * radial(rho);
    if (w == 0.0) return 0.0;
    IntegrationResult c = circle_mean([&](double th) { return kernel(rho, th); },
                                      inner_tol, max_segments, peak_angles);
    inner_evals += c.evaluations;
    if (std::abs(c.value) > 0)
      inner_rel_err = std::max(inner_rel_err, c.error_estimate / std::abs(c.value));
    return w * c.value;
  };
  IntegrationResult r = adaptive_graded(outer, 0.0, 1.0, rel_tol, max_segments, false, true);
  r.evaluations += inner_evals;
  r.error_estimate += inner_rel_err * std::abs(r.value);
  r.method = Method::slice_reduced;
  return r;
}

IntegrationResult disk_mean(const FnPolar& H, double rel_tol, int max_segments,
                            const std::vector<double>& peak_angles) {
  return disk_radial_angular([](double) { return 1.0; }, H, rel_tol, max_segments, peak_angles);
}

IntegrationResultCx circle_mean_cx(const Fn1Cx& g, double rel_tol, int max_segments,
                                   const std::vector<double>& peak_angles) {
  std::vector<double> brk;
  for (double p : peak_angles) brk.push_back(std::remainder(p, 2.0 * M_PI));
  const CoreResult<Cx> r =
      adaptive_core_t<Cx>(g, make_edges(-M_PI, M_PI, brk), rel_tol, max_segments);
  IntegrationResultCx out;
  out.value = r.value / (2.0 * M_PI);
  out.error_estimate = r.err / (2.0 * M_PI);
  out.evaluations = r.evals;
  return out;
}

IntegrationResultCx disk_mean_cx(const FnPolarCx& H, double rel_tol, int max_segments,
                                 const std::vector<double>& peak_angles) {
  long inner_evals = 0;
  double inner_rel_err = 0;
  const double inner_tol = rel_tol * 0.2;
  const GradeMap map{false, true};
  auto outer_cx = [&](double t) {
    double dphi;
    const double rho = map(t, &dphi);
    if (rho <= 0.0 || rho >= 1.0) return Cx(0, 0);
    IntegrationResultCx c = circle_mean_cx([&](double th) { return H(rho, th); }, inner_tol,
                                           max_segments, peak_angles);
    inner_evals += c.evaluations;
    if (std::abs(c.value) > 0)
      inner_rel_err = std::max(inner_rel_err, c.error_estimate / std::abs(c.value));
    return Cx(2.0 * rho * dphi) * c.value;
  };
  const CoreResult<Cx> r = adaptive_core_t<Cx>(outer_cx, {0.0, 0.5, 1.0}, rel_tol, max_segments);
  IntegrationResultCx out;
  out.value = r.value;
  out.error_estimate = r.err + inner_rel_err * std::abs(r.value);
  out.evaluations = r.evals + inner_evals;
  return out;
}

IntegrationResult mc_sphere(const FnPoint& f, int n, const QuadConfig& cfg) {
  if (cfg.mc_samples < 1000) throw DomainError("mc_sphere: mc_samples must be >= 1000");
  double sum = 0, sumsq = 0, comp = 0;
  const long N = cfg.mc_samples;
  for (long i = 0; i < N; ++i) {
    SplitMix64 s = stream_for(cfg.seed, static_cast<std::uint64_t>(i));
    const double v = f(sample_sphere(n, s));
    const double y = v - comp;  // Kahan
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    sumsq += v * v;
  }
  IntegrationResult r;
  r.value = sum / N;
  const double var = std::max(0.0, (sumsq - N * r.value * r.value) / (N - 1.0));
  r.error_estimate = std::sqrt(var / N);
  r.evaluations = N;
  r.method = Method::monte_carlo;
  return r;
}

IntegrationResult mc_ball(const FnPoint& f, int n, const QuadConfig& cfg) {
  if (cfg.mc_samples < 1000) throw DomainError("mc_ball: mc_samples must be >= 1000");
  double sum = 0, sumsq = 0, comp = 0;
  const long N = cfg.mc_samples;
  for (long i = 0; i < N; ++i) {
    SplitMix64 s = stream_for(cfg.seed, static_cast<std::uint64_t>(i));
    const double v = f(sample_ball(n, s));
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    sumsq += v * v;
  }
  IntegrationResult r;
  r.value = sum / N;
  const double var = std::max(0.0, (sumsq - N * r.value * r.value) / (N - 1.0));
  r.error_estimate = std::sqrt(var / N);
  r.evaluations = N;
  r.method = Method::monte_carlo;
  return r;
}

IntegrationResult integrate_radial(const Fn1& f, const QuadConfig& cfg) {
  IntegrationResult r =
      adaptive_graded(f, 0.0, 1.0, cfg.rel_tol, cfg.max_subdivisions, true, true);
  r.method = Method::adaptive;
  return r;
}

CPoint slice_direction(const CPoint& w) {
  const double nw = w.norm();
  if (nw == 0.0) return CPoint::axis(w.dim(), 0);
  return w.scaled(Cx(1.0 / nw, 0));
}

CPoint orthogonal_unit(const CPoint& u) {
  const int n = u.dim();
  if (n < 2) throw DomainError("orthogonal_unit: needs dimension >= 2");
  // start from the axis least aligned with u
  int best = 0;
  double best_abs = std::abs(u[0]);
  for (int i = 1; i < n; ++i) {
    if (std::abs(u[i]) < best_abs) {
      best = i;
      best_abs = std::abs(u[i]);
    }
  }
  CPoint e = CPoint::axis(n, best);
  const Cx proj = inner(e, u);
  std::vector<Cx> v(n);
  for (int i = 0; i < n; ++i) v[i] = e[i] - proj * u[i];
  CPoint q{std::vector<Cx>(v)};
  const double nq = q.norm();
  return q.scaled(Cx(1.0 / nq, 0));
}

namespace {

// xi(lambda) = lambda u + sqrt(1-|lambda|^2) u_perp realizes <xi,u> = lambda.
CPoint sphere_point_for_slice(const CPoint& u, const CPoint& uperp, Cx lambda) {
  const int n = u.dim();
  const double rest = std::sqrt(std::max(0.0, 1.0 - std::norm(lambda)));
  std::vector<Cx> c(n);
  for (int i = 0; i < n; ++i) c[i] = lambda * u[i] + rest * uperp[i];
  return CPoint(std::move(c));
}

}  // namespace

IntegrationResult integrate_sphere(const FnPoint& f, int n, const QuadConfig& cfg,
                                   const std::optional<CPoint>& slice_base) {
  if (n < 1) throw DomainError("integrate_sphere: dimension must be >= 1");
  if (!slice_base) return mc_sphere(f, n, cfg);
  if (slice_base->dim() != n) throw DomainError("integrate_sphere: slice base dimension mismatch");

  const CPoint u = slice_direction(*slice_base);
  if (n == 1) {
    auto g = [&](double th) { return f(CPoint{std::polar(1.0, th) * u[0]}); };
    return periodic_mean_trapezoid(g, cfg.rel_tol, 1L << 22);
  }
  const CPoint uperp = orthogonal_unit(u);
  // slice density of <xi,u> on the disk: (n-1)(1-|lambda|^2)^(n-2) per (1/pi)dA
  auto radial = [&, n](double rho) {
    return (n - 1) * std::pow(1.0 - rho * rho, n - 2);
  };
  auto kern = [&](double rho, double th) {
    return f(sphere_point_for_slice(u, uperp, std::polar(rho, th)));
  };
  return disk_radial_angular(radial, kern, cfg.rel_tol, cfg.max_subdivisions, {0.0});
}

IntegrationResult integrate_ball(const FnPoint& f, int n, const QuadConfig& cfg,
                                 const std::optional<CPoint>& slice_base) {
  if (n < 1) throw DomainError("integrate_ball: dimension must be >= 1");
  if (!slice_base) return mc_ball(f, n, cfg);
  if (slice_base->dim() != n) throw DomainError("integrate_ball: slice base dimension mismatch");

  const CPoint u = slice_direction(*slice_base);
  if (n == 1) {
    // (1/pi) int_D f dA after rotating the slice direction onto the first axis
    auto H = [&](double rho, double th) { return f(CPoint{std::polar(rho, th) * u[0]}); };
    IntegrationResult r = disk_mean(H, cfg.rel_tol, cfg.max_subdivisions, {0.0});
    r.method = Method::slice_reduced;
    return r;
  }
  const CPoint uperp = orthogonal_unit(u);
  // joint density of (x, mu) = (|z|^2, <z,u>): n(n-1)(x - |mu|^2)^(n-2) dx (1/pi)dA(mu);
  // the x-integral runs in d = x - |mu|^2 to keep the density factor exact
  long inner_evals = 0;
  double outer_scale = 0;  // largest slice integral seen, for the noise floor
  auto H = [&](double rho, double th) {
    const Cx lambda = std::polar(rho, th);
    const double s = rho * rho;
    auto g = [&](double d) {
      const double rest = std::sqrt(d);
      std::vector<Cx> c(n);
      for (int i = 0; i < n; ++i) c[i] = lambda * u[i] + rest * uperp[i];
      const double base = (n == 2) ? 1.0 : std::pow(d, n - 2);
      return n * (n - 1.0) * base * f(CPoint(std::move(c)));
    };
    IntegrationResult inner;
    try {
      inner = adaptive_graded(g, 0.0, 1.0 - s, cfg.rel_tol * 0.2, cfg.max_subdivisions,
                              true, true);
    } catch (const QuadratureFailure& e) {
      // a slice whose absolute error is negligible against the outer integral
      // is allowed to stop at the roundoff floor of the integrand
      if (e.error_estimate <= cfg.rel_tol * 0.01 * std::max(outer_scale, 1e-300)) {
        inner.value = e.partial_value;
        inner.error_estimate = e.error_estimate;
        inner.evaluations = e.evaluations;
      } else {
        throw;
      }
    }
    inner_evals += inner.evaluations;
    outer_scale = std::max(outer_scale, std::abs(inner.value));
    return inner.value;
  };
  IntegrationResult r = disk_mean(H, cfg.rel_tol, cfg.max_subdivisions, {0.0});
  r.evaluations += inner_evals;
  r.method = Method::slice_reduced;
  return r;
}

}  // namespace ballasy
