#include "ballasy/spaces.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "ballasy/rng.hpp"
#include "ballasy/special.hpp"
#include "ballasy/verifier.hpp"

namespace ballasy {

namespace {

Cx clog(Cx v) { return std::log(v); }  // principal branch

// log(e/(1-zeta)) = 1 - Log(1-zeta); real part >= 1 - log 2 > 0 on the disk
Cx log_e_over(Cx one_minus) { return 1.0 - clog(one_minus); }

Cx cpow(Cx base, double e) { return std::exp(e * clog(base)); }

}  // namespace

SpaceParams::SpaceParams(double p_, double s_, NormalWeight mu_, NormalWeight nu_, int n_)
    : p(p_), s(s_), mu(std::move(mu_)), nu(std::move(nu_)), n(n_) {
  if (!(p > 0)) throw DomainError("SpaceParams: p must be > 0");
  if (!(s >= 0)) throw DomainError("SpaceParams: s must be >= 0");
  if (n < 1 || n > 4) throw DomainError("SpaceParams: n must be in [1,4]");
}

HoloFunction HoloFunction::constant(int n, Cx c) {
  HoloFunction f;
  f.tag_ = Tag::constant;
  f.n_ = n;
  f.const_ = c;
  return f;
}

HoloFunction HoloFunction::coordinate(int n, int axis, int power) {
  if (axis < 0 || axis >= n) throw DomainError("HoloFunction::coordinate: bad axis");
  if (power < 1) throw DomainError("HoloFunction::coordinate: power must be >= 1");
  HoloFunction f;
  f.tag_ = Tag::coordinate;
  f.n_ = n;
  f.axis_ = axis;
  f.power_ = power;
  return f;
}

HoloFunction HoloFunction::kernel_power(CPoint w0, double gamma_exp) {
  if (w0.norm() > 1.0) throw DomainError("kernel_power: |w0| must be <= 1");
  HoloFunction f;
  f.tag_ = Tag::kernel_power;
  f.n_ = w0.dim();
  f.w0_ = std::move(w0);
  f.gamma_ = gamma_exp;
  return f;
}

HoloFunction HoloFunction::log_kernel(CPoint w0) {
  if (w0.norm() > 1.0) throw DomainError("log_kernel: |w0| must be <= 1");
  HoloFunction f;
  f.tag_ = Tag::log_kernel;
  f.n_ = w0.dim();
  f.w0_ = std::move(w0);
  return f;
}

HoloFunction HoloFunction::thm34_fw(CPoint w, const NormalWeight& mu, double p, double s) {
  require_interior(w, "thm34_fw");
  HoloFunction f;
  f.tag_ = Tag::thm34_fw;
  f.n_ = w.dim();
  const double b = mu.decl_b();
  const double u = 1.0 - w.norm_sq();
  f.coef_ = std::pow(u, 1.0 + b + s / p) / mu.from_one_minus_rsq(u);
  f.e0_ = b + f.n_ / p;
  f.w0_ = std::move(w);
  return f;
}

HoloFunction HoloFunction::cor36_gw(CPoint w, double beta) {
  require_interior(w, "cor36_gw");
  HoloFunction f;
  f.tag_ = Tag::cor36_gw;
  f.n_ = w.dim();
  f.beta_ = beta;
  f.w0_ = std::move(w);
  return f;
}

HoloFunction HoloFunction::note2_psi1(int n) {
  HoloFunction f;
  f.tag_ = Tag::note2_psi1;
  f.n_ = n;
  return f;
}

HoloFunction HoloFunction::note2_psi2(int n) {
  HoloFunction f;
  f.tag_ = Tag::note2_psi2;
  f.n_ = n;
  return f;
}

HoloFunction HoloFunction::note2_psi3(int n) {
  HoloFunction f;
  f.tag_ = Tag::note2_psi3;
  f.n_ = n;
  return f;
}

std::string HoloFunction::name() const {
  switch (tag_) {
    case Tag::constant: return "constant";
    case Tag::coordinate: return "coordinate";
    case Tag::kernel_power: return "kernel-power";
    case Tag::log_kernel: return "log-kernel";
    case Tag::thm34_fw: return "fw";
    case Tag::cor36_gw: return "gw";
    case Tag::note2_psi1: return "psi1";
    case Tag::note2_psi2: return "psi2";
    case Tag::note2_psi3: return "psi3";
  }
  return "?";
}

namespace {

// Phi(zeta) = int_0^zeta (1-t)^{-1} log^{-beta}(e/(1-t)) dt by the closed
// antiderivative: (log^{1-beta}(e/(1-zeta)) - 1)/(1-beta), or log log for beta = 1.
Cx gw_phi(Cx zeta, double beta) {
  const Cx L = log_e_over(1.0 - zeta);
  if (beta == 1.0) return clog(L);
  return (cpow(L, 1.0 - beta) - 1.0) / (1.0 - beta);
}

Cx gw_phi_deriv(Cx zeta, double beta) {
  const Cx L = log_e_over(1.0 - zeta);
  return cpow(L, -beta) / (1.0 - zeta);
}

}  // namespace

HoloFunction HoloFunction::scaled_by(Cx c) const {
  HoloFunction f = *this;
  f.scale_ *= c;
  return f;
}

Cx HoloFunction::value(const CPoint& z) const { return scale_ * value_unscaled(z); }

Cx HoloFunction::value_unscaled(const CPoint& z) const {
  if (z.dim() != n_) throw DomainError("HoloFunction::value: dimension mismatch");
  switch (tag_) {
    case Tag::constant:
      return const_;
    case Tag::coordinate: {
      Cx v = z[axis_];
      Cx out = 1.0;
      for (int i = 0; i < power_; ++i) out *= v;
      return out;
    }
    case Tag::kernel_power:
      return cpow(1.0 - inner(z, w0_), -gamma_);
    case Tag::log_kernel:
      return log_e_over(1.0 - inner(z, w0_));
    case Tag::thm34_fw: {
      const Cx d = 1.0 - inner(z, w0_);
      const double u = 1.0 - w0_.norm_sq();
      // coef * d^{-e0} * (u/d - 1): exactly zero at z = w
      return coef_ * cpow(d, -e0_) * (u / d - 1.0);
    }
    case Tag::cor36_gw: {
      const Cx phi = gw_phi(inner(z, w0_), beta_);
      const Cx den = gw_phi(Cx(w0_.norm_sq(), 0), beta_);
      return phi * phi / den - 2.0 * phi;
    }
    case Tag::note2_psi1: {
      const Cx z1 = z[0];
      return std::exp((z1 + 1.0) / (z1 - 1.0));
    }
    case Tag::note2_psi2:
      return clog(2.0 - clog(1.0 - z[0]));
    case Tag::note2_psi3:
      return clog(clog(4.0 - clog(1.0 - z[0])));
  }
  throw DomainError("HoloFunction::value: unhandled tag");
}

CPoint HoloFunction::gradient(const CPoint& z) const {
  return gradient_unscaled(z).scaled(scale_);
}

CPoint HoloFunction::gradient_unscaled(const CPoint& z) const {
  if (z.dim() != n_) throw DomainError("HoloFunction::gradient: dimension mismatch");
  CPoint g = CPoint::zero(n_);
  switch (tag_) {
    case Tag::constant:
      return g;
    case Tag::coordinate: {
      Cx v = 1.0;
      for (int i = 0; i < power_ - 1; ++i) v *= z[axis_];
      g[axis_] = static_cast<double>(power_) * v;
      return g;
    }
    case Tag::kernel_power: {
      const Cx d = cpow(1.0 - inner(z, w0_), -gamma_ - 1.0);
      for (int i = 0; i < n_; ++i) g[i] = gamma_ * std::conj(w0_[i]) * d;
      return g;
    }
    case Tag::log_kernel: {
      const Cx d = 1.0 / (1.0 - inner(z, w0_));
      for (int i = 0; i < n_; ++i) g[i] = std::conj(w0_[i]) * d;
      return g;
    }
    case Tag::thm34_fw: {
      const Cx d = 1.0 - inner(z, w0_);
      const double u = 1.0 - w0_.norm_sq();
      const double e1 = e0_ + 1.0;
      const Cx common = coef_ * (e1 * u * cpow(d, -e1 - 1.0) - e0_ * cpow(d, -e0_ - 1.0));
      for (int i = 0; i < n_; ++i) g[i] = std::conj(w0_[i]) * common;
      return g;
    }
    case Tag::cor36_gw: {
      const Cx zeta = inner(z, w0_);
      const Cx den = gw_phi(Cx(w0_.norm_sq(), 0), beta_);
      const Cx common = (2.0 * gw_phi(zeta, beta_) / den - 2.0) * gw_phi_deriv(zeta, beta_);
      for (int i = 0; i < n_; ++i) g[i] = std::conj(w0_[i]) * common;
      return g;
    }
    case Tag::note2_psi1: {
      const Cx z1 = z[0];
      const Cx dm = z1 - 1.0;
      g[0] = std::exp((z1 + 1.0) / dm) * (-2.0 / (dm * dm));
      return g;
    }
    case Tag::note2_psi2: {
      const Cx om = 1.0 - z[0];
      g[0] = 1.0 / ((2.0 - clog(om)) * om);
      return g;
    }
    case Tag::note2_psi3: {
      const Cx om = 1.0 - z[0];
      const Cx inner_log = 4.0 - clog(om);
      g[0] = 1.0 / (clog(inner_log) * inner_log * om);
      return g;
    }
  }
  throw DomainError("HoloFunction::gradient: unhandled tag");
}

double HoloFunction::gradient_norm(const CPoint& z) const { return gradient(z).norm(); }

double HoloFunction::gradient_norm_line(double rho, double theta) const {
  const double sc = std::abs(scale_);
  switch (tag_) {
    case Tag::constant:
      return 0.0;
    case Tag::coordinate:
      return sc * power_ * std::pow(rho, power_ - 1.0);
    case Tag::kernel_power: {
      const Cx v = one_minus_coef_polar(w0_.norm(), 0.0, rho, theta);
      return sc * gamma_ * w0_.norm() * std::pow(std::abs(v), -gamma_ - 1.0);
    }
    case Tag::log_kernel: {
      const Cx v = one_minus_coef_polar(w0_.norm(), 0.0, rho, theta);
      return sc * w0_.norm() / std::abs(v);
    }
    case Tag::thm34_fw: {
      const Cx v = one_minus_coef_polar(w0_.norm(), 0.0, rho, theta);
      const double u = 1.0 - w0_.norm_sq();
      const double e1 = e0_ + 1.0;
      return sc * coef_ * w0_.norm() * std::pow(std::abs(v), -e0_ - 1.0) *
             std::abs(e1 * u / v - e0_);
    }
    case Tag::cor36_gw: {
      const Cx v = one_minus_coef_polar(w0_.norm(), 0.0, rho, theta);
      const Cx L = 1.0 - clog(v);
      const Cx phi = beta_ == 1.0 ? clog(L) : (cpow(L, 1.0 - beta_) - 1.0) / (1.0 - beta_);
      const Cx den = gw_phi(Cx(w0_.norm_sq(), 0), beta_);
      const Cx dphi = cpow(L, -beta_) / v;
      return sc * std::abs((2.0 * phi / den - 2.0) * dphi) * w0_.norm();
    }
    case Tag::note2_psi1: {
      const Cx v = one_minus_coef_polar(1.0, 0.0, rho, theta);
      const double av2 = std::norm(v);
      return sc * 2.0 / av2 * std::exp(1.0 - 2.0 * v.real() / av2);
    }
    case Tag::note2_psi2: {
      const Cx v = one_minus_coef_polar(1.0, 0.0, rho, theta);
      return sc / (std::abs(2.0 - clog(v)) * std::abs(v));
    }
    case Tag::note2_psi3: {
      const Cx v = one_minus_coef_polar(1.0, 0.0, rho, theta);
      const Cx il = 4.0 - clog(v);
      return sc / (std::abs(clog(il)) * std::abs(il) * std::abs(v));
    }
  }
  throw DomainError("gradient_norm_line: unhandled tag");
}

std::optional<CPoint> HoloFunction::slice_axis() const {
  switch (tag_) {
    case Tag::constant:
      return std::nullopt;
    case Tag::coordinate:
      return CPoint::axis(n_, axis_);
    case Tag::kernel_power:
    case Tag::log_kernel:
    case Tag::thm34_fw:
    case Tag::cor36_gw: {
      const double nw = w0_.norm();
      if (nw == 0.0) return std::nullopt;
      return w0_.scaled(Cx(1.0 / nw, 0));
    }
    case Tag::note2_psi1:
    case Tag::note2_psi2:
    case Tag::note2_psi3:
      return CPoint::axis(n_, 0);
  }
  return std::nullopt;
}

std::vector<BallGrid::Point> BallGrid::points() const {
  std::vector<Point> out;
  if (include_center) out.push_back({CPoint::zero(n), 1.0, -1});
  for (size_t si = 0; si < shell_y.size(); ++si) {
    const double y = shell_y[si];
    const double r = 1.0 - y;
    for (const CPoint& d : directions)
      out.push_back({d.scaled(Cx(r, 0)), y, static_cast<int>(si)});
    if (coupled_angles) {
      const double sy = std::sqrt(y);
      for (double th : {0.5 * sy, sy, 2.0 * sy, y})
        out.push_back({CPoint::axis(n, 0, std::polar(r, th)), y, static_cast<int>(si)});
    }
  }
  return out;
}

BallGrid BallGrid::norm_grid(int n, int max_m) {
  BallGrid g;
  g.n = n;
  for (int m = 1; m <= max_m; ++m) g.shell_y.push_back(std::pow(2.0, -m));
  if (n == 1) {
    for (int j = 0; j < 16; ++j)
      g.directions.push_back(CPoint{std::polar(1.0, 2.0 * M_PI * j / 16.0)});
  } else {
    SplitMix64 rng(0x9c0ffee1u);
    for (int j = 0; j < 64; ++j) g.directions.push_back(sample_sphere(n, rng));
  }
  return g;
}

BallGrid BallGrid::multiplier_grid(int n, int max_m) {
  BallGrid g = norm_grid(n, max_m);
  g.coupled_angles = true;
  return g;
}

namespace {

struct SliceSetup {
  bool reduced = false;
  CPoint u;  // slice direction
  Cx cw;     // <z,w> = cw * mu for z with slice value mu = <z,u>
};

// Reduction applies when the function's slice axis and w span one complex line.
SliceSetup slice_setup(const HoloFunction& f, const CPoint& w) {
  SliceSetup s;
  const auto axis = f.slice_axis();
  CPoint u = axis ? *axis : slice_direction(w);
  if (w.norm() > 0 && axis) {
    const Cx pw = inner(w, u);
    if (std::norm(pw) < (1.0 - 1e-12) * w.norm_sq()) {
      s.reduced = false;
      return s;
    }
  }
  s.reduced = true;
  s.u = std::move(u);
  s.cw = std::conj(inner(w, s.u));
  return s;
}

double pow_log_safe(double base, double e) { return e == 0.0 ? 1.0 : std::pow(base, e); }

}  // namespace

double fpms_local(const HoloFunction& f, const CPoint& w, const SpaceParams& sp,
                  const QuadConfig& cfg) {
  if (f.dim() != sp.n || w.dim() != sp.n) throw DomainError("fpms_local: dimension mismatch");
  require_interior(w, "fpms_local");
  const double p = sp.p, s2 = 2.0 * sp.s;
  const double ws = sp.s == 0.0 ? 1.0 : std::pow(1.0 - w.norm_sq(), sp.s);

  const SliceSetup slice = slice_setup(f, w);
  if (!slice.reduced) {
    auto integrand = [&](const CPoint& z) {
      const double x = z.norm_sq();
      const double mu_v = sp.mu.from_one_minus_rsq(1.0 - x);
      double v = ws * std::pow(f.gradient_norm(z), p) * std::pow(mu_v, p) / (1.0 - x);
      if (s2 != 0.0) v *= std::pow(std::abs(1.0 - inner(z, w)), -s2);
      return v;
    };
    return mc_ball(integrand, sp.n, cfg).value;
  }

  const int n = sp.n;
  std::vector<double> peaks;
  if (std::abs(slice.cw) > 0) peaks.push_back(-std::arg(slice.cw));
  peaks.push_back(0.0);  // catalog singularities sit on the positive slice axis

  const double cw_mod = std::abs(slice.cw);
  const double cw_arg = std::arg(slice.cw);
  auto kernel = [&](double rho, double th) {
    double v = std::pow(f.gradient_norm_line(rho, th), p);
    if (s2 != 0.0 && v != 0.0) {
      const Cx vw = one_minus_coef_polar(cw_mod, cw_arg, rho, th);
      v *= std::exp(-s2 * std::log(std::abs(vw)));
    }
    return v;
  };

  if (n == 1) {
    auto radial = [&](double rho) {
      const double u = (1.0 - rho) * (1.0 + rho);
      return ws * std::pow(sp.mu.from_one_minus_rsq(u), p) / u;
    };
    IntegrationResult r =
        disk_radial_angular(radial, kernel, cfg.rel_tol, cfg.max_subdivisions, peaks);
    return r.value;
  }

  // n >= 2: joint-density reduction; W(s0) = int_{s0}^1 (x-s0)^{n-2} A(x) dx with
  // A(x) = mu^p(sqrt(x)) / (1-x)
  auto xweight_integral = [&](double s0) {
    const double span = 1.0 - s0;
    auto fx = [&](double v) {
      const double one_minus_x = span * (1.0 - v);
      const double base = (n == 2) ? 1.0 : std::pow(span * v, n - 2.0);
      return base * std::pow(sp.mu.from_one_minus_rsq(one_minus_x), p) / one_minus_x;
    };
    IntegrationResult r =
        adaptive_graded(fx, 0.0, 1.0, cfg.rel_tol * 0.1, cfg.max_subdivisions, false, true);
    return span * r.value;
  };
  auto radial = [&](double rho) {
    return ws * n * (n - 1.0) * xweight_integral(rho * rho);
  };
  IntegrationResult r =
      disk_radial_angular(radial, kernel, cfg.rel_tol, cfg.max_subdivisions, peaks);
  return r.value;
}

double fpms_norm(const HoloFunction& f, const SpaceParams& sp, const BallGrid& wgrid,
                 const QuadConfig& cfg) {
  const auto pts = wgrid.points();
  std::vector<double> locals(pts.size(), 0.0);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next.fetch_add(1); i < pts.size(); i = next.fetch_add(1))
      locals[i] = fpms_local(f, pts[i].z, sp, cfg);
  };
  const int workers = std::min<int>(worker_count(), static_cast<int>(pts.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  double best = 0;
  for (double v : locals) best = std::max(best, v);
  return std::abs(f.value(CPoint::zero(sp.n))) + std::pow(best, 1.0 / sp.p);
}

double bloch_norm(const HoloFunction& f, const NormalWeight& nu, const BallGrid& zgrid) {
  double best = 0;
  for (const auto& pt : zgrid.points()) {
    const double u = pt.y * (2.0 - pt.y);
    best = std::max(best, nu.from_one_minus_rsq(u) * f.gradient_norm(pt.z));
  }
  return std::abs(f.value(CPoint::zero(f.dim()))) + best;
}

double lemma24_check(const HoloFunction& f, const SpaceParams& sp, const BallGrid& wgrid,
                     const QuadConfig& cfg) {
  const double norm = fpms_norm(f, sp, wgrid, cfg);
  if (norm == 0.0) return 0.0;
  const double e = (sp.n - sp.s) / sp.p;
  double best = 0;
  for (const auto& pt : wgrid.points()) {
    const double u = pt.y * (2.0 - pt.y);
    const double q =
        f.gradient_norm(pt.z) * std::pow(u, e) * sp.mu.from_one_minus_rsq(u);
    best = std::max(best, q);
  }
  return best / norm;
}

std::pair<double, double> prop33_check(const HoloFunction& h, const NormalWeight& mu1,
                                       const NormalWeight& mu2, const BallGrid& zgrid) {
  double m = 0, mp = 0;
  for (const auto& pt : zgrid.points()) {
    const double u = pt.y * (2.0 - pt.y);
    const double r1 = mu1.from_one_minus_rsq(u), r2 = mu2.from_one_minus_rsq(u);
    m = std::max(m, r1 * std::abs(h.value(pt.z)) / r2);
    mp = std::max(mp, u * r1 * h.gradient_norm(pt.z) / r2);
  }
  return {m, mp};
}

const CriterionRecord& MultiplierReport::at(const std::string& id) const {
  for (const auto& c : criteria)
    if (c.id == id) return c;
  throw DomainError("MultiplierReport: unknown criterion " + id);
}

std::string MultiplierReport::to_json() const {
  char buf[64];
  std::string out = "{\n";
  out += "  \"grid\": {\"n\": " + std::to_string(n) + ", \"shells\": " + std::to_string(shells) +
         ", \"ref_shell\": " + std::to_string(ref_shell) + "},\n";
  out += "  \"criteria\": {\n";
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    std::snprintf(buf, sizeof buf, "%.17g", c.value);
    out += "    \"" + c.id + "\": {\"value\": " + buf +
           ", \"divergence\": " + (c.divergence ? "true" : "false") + "}";
    out += (i + 1 < criteria.size()) ? ",\n" : "\n";
  }
  out += "  }\n}\n";
  return out;
}

MultiplierReport multiplier_criteria(const HoloFunction& psi, const SpaceParams& sp,
                                     const BallGrid& zgrid) {
  if (psi.dim() != sp.n || zgrid.n != sp.n)
    throw DomainError("multiplier_criteria: dimension mismatch");
  const int shells = static_cast<int>(zgrid.shell_y.size());
  MultiplierReport rep;
  rep.n = sp.n;
  rep.shells = shells;
  // reference shell: nearest to y = 2^-3
  int ref = 0;
  for (int i = 1; i < shells; ++i)
    if (std::abs(std::log2(zgrid.shell_y[i]) + 3.0) <
        std::abs(std::log2(zgrid.shell_y[ref]) + 3.0))
      ref = i;
  rep.ref_shell = ref;

  const char* ids[6] = {"3.8", "3.9", "3.10", "3.11", "3.12", "hinf"};
  for (const char* id : ids) rep.criteria.push_back({id, 0, false, std::vector<double>(shells, 0)});

  const double beta = sp.mu.beta();
  const double e_ns = (sp.n - sp.s) / sp.p;
  for (const auto& pt : zgrid.points()) {
    if (pt.shell < 0) continue;
    const double u = pt.y * (2.0 - pt.y);
    const double lu = 1.0 - std::log(u);      // log(e/(1-|z|^2))
    const double llu = std::log(lu);          // log log(e/(1-|z|^2))
    const double av = std::abs(psi.value(pt.z));
    const double gn = psi.gradient_norm(pt.z);
    const double nu_v = sp.nu.from_one_minus_rsq(u);
    const double mu_v = sp.mu.from_one_minus_rsq(u);
    const double vals[6] = {
        nu_v * av / (mu_v * std::pow(u, e_ns)),
        nu_v * gn * llu,
        nu_v * gn * pow_log_safe(lu, 1.0 - beta),
        u * gn * lu * llu,
        u * gn * lu,
        av,
    };
    for (int i = 0; i < 6; ++i)
      rep.criteria[i].shell_sup[pt.shell] = std::max(rep.criteria[i].shell_sup[pt.shell], vals[i]);
  }
  for (auto& c : rep.criteria) {
    for (double v : c.shell_sup) c.value = std::max(c.value, v);
    if (shells > 0) {
      const double last = c.shell_sup[shells - 1];
      const double base = c.shell_sup[ref];
      c.divergence = base > 0 ? last > 2.0 * base : last > 0;
    }
  }
  return rep;
}

std::pair<Cx, Cx> bergman_reproduce(const HoloFunction& f, double alpha, const CPoint& z,
                                    const QuadConfig& cfg) {
  if (!(alpha > -1)) throw DomainError("bergman_reproduce: alpha must be > -1");
  require_interior(z, "bergman_reproduce");
  const int n = z.dim();
  if (f.dim() != n) throw DomainError("bergman_reproduce: dimension mismatch");
  const double c_alpha =
      gamma_fn(n + 1.0 + alpha) / (gamma_fn(n + 1.0) * gamma_fn(alpha + 1.0));
  const double q = n + 1.0 + alpha;
  const Cx direct = f.value(z);

  if (n == 1) {
    const double peak_angle = std::arg(z[0] == Cx(0, 0) ? Cx(1, 0) : z[0]);
    auto H = [&](double rho, double th) -> Cx {
      const CPoint wp{std::polar(rho, th)};
      const Cx kern = cpow(1.0 - inner(z, wp), -q);
      const double wgt = c_alpha * (alpha == 0.0 ? 1.0 : std::pow(1.0 - rho * rho, alpha));
      return f.value(wp) * kern * wgt;
    };
    const IntegrationResultCx r = disk_mean_cx(H, cfg.rel_tol, cfg.max_subdivisions, {peak_angle});
    return {r.value, direct};
  }

  // n >= 2: Monte Carlo over the ball (deterministic streams), one pass per part
  auto term = [&](bool real_part) {
    auto integrand = [&](const CPoint& wp) {
      const Cx kern = cpow(1.0 - inner(z, wp), -q);
      const double wgt = c_alpha * std::pow(1.0 - wp.norm_sq(), alpha);
      const Cx v = f.value(wp) * kern * wgt;
      return real_part ? v.real() : v.imag();
    };
    return mc_ball(integrand, n, cfg).value;
  };
  return {Cx(term(true), term(false)), direct};
}

std::pair<double, double> thm34_hypothesis_window(const NormalWeight& mu, double p, double s,
                                                  int n, int max_m, const QuadConfig& cfg) {
  const double e = (s - n) / p;
  auto dens = [&](double rho) {
    const double u = (1.0 - rho) * (1.0 + rho);
    return std::pow(u, e) / mu.from_one_minus_rsq(u);
  };
  double lo = 0, hi = 0;
  bool first = true;
  for (int m = 2; m <= max_m; ++m) {
    const double r = 1.0 - std::pow(2.0, -m);
    IntegrationResult integral =
        adaptive_graded(dens, 0.0, r, cfg.rel_tol, cfg.max_subdivisions, false, true);
    const double u = std::pow(2.0, -m) * (2.0 - std::pow(2.0, -m));
    const double rhs = std::pow(u, 1.0 + e) / mu.from_one_minus_rsq(u);
    const double ratio = (1.0 + integral.value) / rhs;
    if (first) {
      lo = hi = ratio;
      first = false;
    } else {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  return {lo, hi};
}

double cor35_criterion_sup(const HoloFunction& psi, const NormalWeight& nu,
                           const NormalWeight& mu, double p, double s, const BallGrid& zgrid,
                           const QuadConfig& cfg) {
  const double e = (s - zgrid.n) / p;
  auto dens = [&](double rho) {
    const double u = (1.0 - rho) * (1.0 + rho);
    return std::pow(u, e) / mu.from_one_minus_rsq(u);
  };
  // cache the radial integral per shell
  std::vector<double> cache(zgrid.shell_y.size(), -1.0);
  double best = 0;
  for (const auto& pt : zgrid.points()) {
    if (pt.shell < 0) continue;
    if (cache[pt.shell] < 0) {
      const double r = 1.0 - pt.y;
      cache[pt.shell] =
          adaptive_graded(dens, 0.0, r, cfg.rel_tol, cfg.max_subdivisions, false, true).value;
    }
    const double u = pt.y * (2.0 - pt.y);
    best = std::max(best, nu.from_one_minus_rsq(u) * psi.gradient_norm(pt.z) * cache[pt.shell]);
  }
  return best;
}

}  // namespace ballasy
