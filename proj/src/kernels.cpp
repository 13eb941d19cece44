#include "ballasy/kernels.hpp"

#include <cmath>

#include "ballasy/special.hpp"

namespace ballasy {

const char* to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::PropA_I: return "propA-I";
    case FamilyTag::PropA_J: return "propA-J";
    case FamilyTag::P31_G: return "p31-G";
    case FamilyTag::P31_F: return "p31-F";
    case FamilyTag::PropB: return "propB";
    case FamilyTag::PropC: return "propC";
    case FamilyTag::P32: return "p32";
    case FamilyTag::L22: return "l22";
    case FamilyTag::L21_I1: return "l21-I1";
    case FamilyTag::L21_I2: return "l21-I2";
  }
  return "?";
}

namespace {

void check_dim(int n) {
  if (n < 1 || n > 4) throw DomainError("KernelFamily: dimension must be in [1,4]");
}

}  // namespace

KernelFamily KernelFamily::propA_I(int n, double c) {
  check_dim(n);
  KernelFamily f;
  f.tag = FamilyTag::PropA_I;
  f.n = n;
  f.c = c;
  return f;
}

KernelFamily KernelFamily::propA_J(int n, double t, double c) {
  check_dim(n);
  if (!(t > -1)) throw DomainError("propA-J: t must be > -1");
  KernelFamily f;
  f.tag = FamilyTag::PropA_J;
  f.n = n;
  f.t = t;
  f.c = c;
  return f;
}

KernelFamily KernelFamily::p31_G(int n, double c, double k) {
  check_dim(n);
  KernelFamily f;
  f.tag = FamilyTag::P31_G;
  f.n = n;
  f.c = c;
  f.k = k;
  return f;
}

KernelFamily KernelFamily::p31_F(int n, double delta, double c, double k) {
  check_dim(n);
  if (!(delta > -1)) throw DomainError("p31-F: delta must be > -1");
  KernelFamily f;
  f.tag = FamilyTag::P31_F;
  f.n = n;
  f.delta = delta;
  f.c = c;
  f.k = k;
  return f;
}

KernelFamily KernelFamily::propB(int n, double delta, double t, double r, double k) {
  check_dim(n);
  if (!(delta > -1)) throw DomainError("propB: delta must be > -1");
  if (!(t >= 0) || !(r >= 0) || !(k >= 0)) throw DomainError("propB: needs t,r,k >= 0");
  KernelFamily f;
  f.tag = FamilyTag::PropB;
  f.n = n;
  f.delta = delta;
  f.t = t;
  f.r = r;
  f.k = k;
  return f;
}

KernelFamily KernelFamily::propC(int n, double t, double r) {
  check_dim(n);
  if (!(t + n > 0) || !(r + n > 0)) throw DomainError("propC: needs t+n > 0 and r+n > 0");
  KernelFamily f;
  f.tag = FamilyTag::PropC;
  f.n = n;
  f.t = t;
  f.r = r;
  return f;
}

KernelFamily KernelFamily::p32(int n, double delta, double t, double r, double k) {
  check_dim(n);
  if (!(delta > -1)) throw DomainError("p32: delta must be > -1");
  if (!(t > 0) || !(r > 0) || !(k > 0)) throw DomainError("p32: needs t,r,k > 0");
  KernelFamily f;
  f.tag = FamilyTag::P32;
  f.n = n;
  f.delta = delta;
  f.t = t;
  f.r = r;
  f.k = k;
  return f;
}

KernelFamily KernelFamily::l22(int n, double t, double r, double k) {
  check_dim(n);
  if (!(t > n) || !(r > 0) || !(t > r) || !(n > r)) throw DomainError("l22: needs t > n > r > 0");
  if (!(k < 0)) throw DomainError("l22: needs k < 0");
  KernelFamily f;
  f.tag = FamilyTag::L22;
  f.n = n;
  f.t = t;
  f.r = r;
  f.k = k;
  f.log_form = LogForm::modulus;
  return f;
}

KernelFamily KernelFamily::l21_I1(double delta, double c, double k) {
  if (!(delta > -1)) throw DomainError("l21-I1: delta must be > -1");
  if (!(c >= 0)) throw DomainError("l21-I1: c must be >= 0");
  KernelFamily f;
  f.tag = FamilyTag::L21_I1;
  f.n = 1;
  f.delta = delta;
  f.c = c;
  f.k = k;
  return f;
}

KernelFamily KernelFamily::l21_I2(double delta, double c, double k) {
  KernelFamily f = l21_I1(delta, c, k);
  f.tag = FamilyTag::L21_I2;
  return f;
}

std::string KernelFamily::describe() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s{n=%d, delta=%g, t=%g, r=%g, c=%g, k=%g}", to_string(tag), n,
                delta, t, r, c, k);
  return buf;
}

PointPair PointPair::single(CPoint w) {
  PointPair p;
  p.w = std::move(w);
  return p;
}

PointPair PointPair::pair(CPoint w, CPoint a) {
  PointPair p;
  p.w = std::move(w);
  p.second = std::move(a);
  return p;
}

PointPair PointPair::radial(double rho) {
  PointPair p;
  p.rho = rho;
  return p;
}

double log_factor(Cx u, double k, LogForm form) {
  const double au = std::abs(u);
  if (au == 0.0) throw DomainError("log_factor: u = 0 (boundary contact)");
  if (k == 0.0) return 1.0;
  double base;
  if (form == LogForm::modulus) {
    base = 1.0 - std::log(au);  // log(e/|u|)
  } else {
    // |Log(e/u)| = |1 - Log u| for the principal branch
    base = std::hypot(1.0 - std::log(au), std::arg(u));
  }
  return std::pow(base, k);
}

namespace {

struct LineFactor {
  Cx coef;        // v = 1 - coef * mu
  double pow_abs; // contributes |v|^{-pow_abs}
  double log_pow; // contributes log_factor(v, log_pow, form); 0 = absent
  LogForm form = LogForm::complex_abs;

  Cx v_at(double rho, double theta) const {
    return one_minus_coef_polar(std::abs(coef), std::arg(coef), rho, theta);
  }
};

struct XWeight {
  double delta = 0;  // (1-x)^delta
  double logk = 0;   // log^k(e/(1-x))
  double operator()(double x) const {
    const double lu = std::log1p(-x);
    double f = (delta != 0.0) ? std::exp(delta * lu) : 1.0;
    if (logk != 0.0) f *= std::pow(1.0 - lu, logk);
    return f;
  }
};

struct ReducedKernel {
  std::vector<LineFactor> factors;

  double operator()(double rho, double theta) const {
    double log_sum = 0;
    double extra = 1.0;
    for (const LineFactor& f : factors) {
      const Cx v = f.v_at(rho, theta);
      log_sum -= f.pow_abs * std::log(std::abs(v));
      if (f.log_pow != 0.0) extra *= log_factor(v, f.log_pow, f.form);
    }
    return std::exp(log_sum) * extra;
  }

  std::vector<double> peak_angles() const {
    std::vector<double> a;
    for (const LineFactor& f : factors)
      if (std::abs(f.coef) > 0) a.push_back(-std::arg(f.coef));
    return a;
  }
};

struct FamilyShape {
  bool sphere = false;        // else ball (radial handled separately)
  XWeight xw;                 // ball weight in x = |z|^2
  // line factors with coefficients taken from the reduced scalars
  ReducedKernel reduced(const KernelFamily& fam, double w_abs, Cx alpha) const {
    ReducedKernel k;
    switch (fam.tag) {
      case FamilyTag::PropA_I:
        k.factors.push_back({Cx(w_abs, 0), fam.n + fam.c, 0});
        break;
      case FamilyTag::PropA_J:
        k.factors.push_back({Cx(w_abs, 0), fam.n + 1 + fam.t + fam.c, 0});
        break;
      case FamilyTag::P31_G:
        k.factors.push_back({Cx(w_abs, 0), fam.n + fam.c, fam.k, fam.log_form});
        break;
      case FamilyTag::P31_F:
        k.factors.push_back({Cx(w_abs, 0), fam.n + 1 + fam.delta + fam.c, fam.k, fam.log_form});
        break;
      case FamilyTag::PropB:
        k.factors.push_back({Cx(w_abs, 0), fam.t, 0});
        k.factors.push_back({std::conj(alpha), fam.r, 0});
        break;
      case FamilyTag::PropC:
        k.factors.push_back({Cx(w_abs, 0), fam.n + fam.t, 0});
        k.factors.push_back({std::conj(alpha), fam.n + fam.r, 0});
        break;
      case FamilyTag::P32:
        k.factors.push_back({Cx(w_abs, 0), fam.t, 0});
        k.factors.push_back({std::conj(alpha), fam.r, -fam.k, fam.log_form});
        break;
      case FamilyTag::L22:
        k.factors.push_back({Cx(w_abs, 0), fam.t, 0});
        k.factors.push_back({std::conj(alpha), fam.r, fam.k, LogForm::modulus});
        break;
      default:
        throw DomainError("reduced(): radial family has no line kernel");
    }
    return k;
  }
};

FamilyShape shape_of(const KernelFamily& fam) {
  FamilyShape s;
  switch (fam.tag) {
    case FamilyTag::PropA_I:
    case FamilyTag::P31_G:
    case FamilyTag::PropC:
    case FamilyTag::L22:
      s.sphere = true;
      break;
    case FamilyTag::PropA_J:
      s.xw = {fam.t, 0};
      break;
    case FamilyTag::P31_F:
      s.xw = {fam.delta, 0};
      break;
    case FamilyTag::PropB:
    case FamilyTag::P32:
      s.xw = {fam.delta, fam.k};
      break;
    default:
      throw DomainError("shape_of: radial family");
  }
  return s;
}

// W(s) = int_s^1 (x-s)^{n-2} A(x) dx for the ball reduction at n >= 2.
double ball_x_weight_integral(const XWeight& xw, int n, double s, const QuadConfig& cfg,
                              long* evals) {
  if (xw.logk == 0.0) {
    // closed Beta form
    return beta_fn(n - 1.0, xw.delta + 1.0) * std::pow(1.0 - s, n - 1 + xw.delta);
  }
  const double span = 1.0 - s;
  auto f = [&](double v) {
    const double one_minus_x = span * (1.0 - v);
    const double base = (n == 2) ? 1.0 : std::pow(span * v, n - 2.0);
    double val = base * std::exp(xw.delta * std::log(one_minus_x));
    val *= std::pow(1.0 - std::log(one_minus_x), xw.logk);
    return val;
  };
  IntegrationResult r = adaptive_graded(f, 0.0, 1.0, cfg.rel_tol * 0.1, cfg.max_subdivisions,
                                        false, true);
  *evals += r.evaluations;
  return span * r.value;
}

struct ReductionScalars {
  double w_abs = 0;
  Cx alpha{0, 0};  // <a, u>; zero for single-point families
  bool ok = false; // false -> points span more than one complex line
};

ReductionScalars reduction_scalars(const KernelFamily& fam, const PointPair& pts) {
  ReductionScalars rs;
  rs.w_abs = pts.w.norm();
  if (!fam.is_two_point()) {
    rs.ok = true;
    return rs;
  }
  const CPoint& a = *pts.second;
  const double na = a.norm();
  if (rs.w_abs == 0.0 && na == 0.0) {
    rs.ok = true;
    return rs;
  }
  const CPoint u = slice_direction(rs.w_abs > 0 ? pts.w : a);
  rs.alpha = inner(a, u);
  if (rs.w_abs == 0.0) {
    rs.ok = true;
    return rs;
  }
  // collinear iff the projection of a onto u carries all of |a|
  rs.ok = std::norm(rs.alpha) >= (1.0 - 1e-12) * na * na;
  return rs;
}

void check_arity(const KernelFamily& fam, const PointPair& pts) {
  if (fam.is_radial()) {
    if (!pts.rho) throw DomainError("eval_lhs: radial family needs rho");
    if (!(*pts.rho >= 0.0) || *pts.rho >= 1.0)
      throw DomainError("eval_lhs: rho must be in [0,1)");
    return;
  }
  if (pts.rho) throw DomainError("eval_lhs: rho given for a non-radial family");
  if (pts.w.dim() != fam.n) throw DomainError("eval_lhs: w dimension mismatch");
  require_interior(pts.w, "eval_lhs(w)");
  if (fam.is_two_point()) {
    if (!pts.second) throw DomainError("eval_lhs: two-point family needs a second point");
    if (pts.second->dim() != fam.n) throw DomainError("eval_lhs: second point dimension mismatch");
    require_interior(*pts.second, "eval_lhs(second)");
  } else if (pts.second) {
    throw DomainError("eval_lhs: single-point family given a second point");
  }
}

double radial_integrand(const KernelFamily& fam, double rho, double rr) {
  const double one_minus_r = 1.0 - rr;
  if (one_minus_r <= 0.0) return 0.0;
  const double denom = 1.0 - rr * rho;
  double v = (fam.delta != 0.0 ? fam.delta * std::log(one_minus_r) : 0.0) -
             (fam.delta + 1 + fam.c) * std::log(denom);
  double val = std::exp(v);
  if (fam.k != 0.0) {
    double base;
    if (fam.tag == FamilyTag::L21_I1) {
      base = 1.0 - std::log(denom);  // log(e/(1-rho r))
    } else {
      base = 1.0 + std::log(denom) - std::log(1.0 - rho);  // log(e(1-rho r)/(1-rho))
    }
    val *= std::pow(base, fam.k);
  }
  return val;
}

}  // namespace

double family_integrand(const KernelFamily& fam, const PointPair& pts, const CPoint& z) {
  if (fam.is_radial()) throw DomainError("family_integrand: radial family");
  const Cx vw = 1.0 - inner(z, pts.w);
  double log_sum = 0;
  double extra = 1.0;
  switch (fam.tag) {
    case FamilyTag::PropA_I:
      log_sum -= (fam.n + fam.c) * std::log(std::abs(vw));
      break;
    case FamilyTag::PropA_J:
      log_sum = fam.t * std::log1p(-z.norm_sq()) -
                (fam.n + 1 + fam.t + fam.c) * std::log(std::abs(vw));
      break;
    case FamilyTag::P31_G:
      log_sum -= (fam.n + fam.c) * std::log(std::abs(vw));
      extra = log_factor(vw, fam.k, fam.log_form);
      break;
    case FamilyTag::P31_F:
      log_sum = fam.delta * std::log1p(-z.norm_sq()) -
                (fam.n + 1 + fam.delta + fam.c) * std::log(std::abs(vw));
      extra = log_factor(vw, fam.k, fam.log_form);
      break;
    case FamilyTag::PropB: {
      const Cx va = 1.0 - inner(z, *pts.second);
      const double u = 1.0 - z.norm_sq();
      log_sum = fam.delta * std::log(u) - fam.t * std::log(std::abs(vw)) -
                fam.r * std::log(std::abs(va));
      extra = std::pow(1.0 - std::log(u), fam.k);
      break;
    }
    case FamilyTag::PropC: {
      const Cx va = 1.0 - inner(z, *pts.second);
      log_sum = -(fam.n + fam.t) * std::log(std::abs(vw)) -
                (fam.n + fam.r) * std::log(std::abs(va));
      break;
    }
    case FamilyTag::P32: {
      const Cx va = 1.0 - inner(z, *pts.second);
      const double u = 1.0 - z.norm_sq();
      log_sum = fam.delta * std::log(u) - fam.t * std::log(std::abs(vw)) -
                fam.r * std::log(std::abs(va));
      extra = log_factor(va, -fam.k, fam.log_form) * std::pow(1.0 - std::log(u), fam.k);
      break;
    }
    case FamilyTag::L22: {
      const Cx va = 1.0 - inner(z, *pts.second);
      log_sum = -fam.t * std::log(std::abs(vw)) - fam.r * std::log(std::abs(va));
      extra = log_factor(va, fam.k, LogForm::modulus);
      break;
    }
    default:
      throw DomainError("family_integrand: unhandled family");
  }
  return std::exp(log_sum) * extra;
}

IntegrationResult eval_lhs(const KernelFamily& fam, const PointPair& pts, const QuadConfig& cfg) {
  check_arity(fam, pts);

  if (fam.is_radial()) {
    const double rho = *pts.rho;
    return integrate_radial([&](double rr) { return radial_integrand(fam, rho, rr); }, cfg);
  }

  const ReductionScalars rs = reduction_scalars(fam, pts);
  if (!rs.ok) {
    auto f = [&](const CPoint& z) { return family_integrand(fam, pts, z); };
    return fam.is_sphere() ? mc_sphere(f, fam.n, cfg) : mc_ball(f, fam.n, cfg);
  }

  const FamilyShape shape = shape_of(fam);
  const ReducedKernel kern = shape.reduced(fam, rs.w_abs, rs.alpha);
  const std::vector<double> peaks = kern.peak_angles();
  const int n = fam.n;

  if (shape.sphere) {
    if (n == 1) {
      IntegrationResult r = circle_mean([&](double th) { return kern(1.0, th); }, cfg.rel_tol,
                                        cfg.max_subdivisions, peaks);
      r.method = Method::slice_reduced;
      return r;
    }
    auto radial = [n](double rho) { return (n - 1) * std::pow(1.0 - rho * rho, n - 2.0); };
    return disk_radial_angular(radial, [&](double rho, double th) { return kern(rho, th); },
                               cfg.rel_tol, cfg.max_subdivisions, peaks);
  }

  long wevals = 0;
  Fn1 radial;
  if (n == 1) {
    radial = [&](double rho) { return shape.xw(rho * rho); };
  } else {
    radial = [&, n](double rho) {
      return n * (n - 1.0) * ball_x_weight_integral(shape.xw, n, rho * rho, cfg, &wevals);
    };
  }
  IntegrationResult r = disk_radial_angular(radial, [&](double rho, double th) { return kern(rho, th); },
                                            cfg.rel_tol, cfg.max_subdivisions, peaks);
  r.evaluations += wevals;
  return r;
}

}  // namespace ballasy
