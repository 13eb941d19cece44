#include "ballasy/asymptotics.hpp"

#include <cmath>
#include <functional>

namespace ballasy {

const char* to_string(Prop p) {
  switch (p) {
    case Prop::A: return "A";
    case Prop::L21: return "2.1";
    case Prop::P31: return "3.1";
    case Prop::B: return "B";
    case Prop::C: return "C";
    case Prop::P32: return "3.2";
    case Prop::L22: return "2.2";
  }
  return "?";
}

std::string CaseId::label() const {
  if (prop == Prop::L22) return "2.2";
  return std::string(to_string(prop)) + "(" + std::to_string(index) + ")";
}

namespace {

// quantities every right-hand side is built from
struct EvalCtx {
  bool two_point = false;
  double log_u = 0;    // log(1-|w|^2)   (log(1-rho) for the radial families)
  double log_ua = 0;   // log(1-|a|^2)
  double log_m = 0;    // log |1-<w,a>|
  double Lu = 1;       // log(e/(1-|w|^2))
  double Lua = 1;
  double Lm = 1;
  double LLu = 0;      // log log(e^2/(1-|w|^2))
  double log_phi_wa = 1;      // log(e/|1-<w, phi_w(a)>|)
  double log_phi_aw = 1;      // log(e/|1-<a, phi_a(w)>|)
  double log_inv_phiwa2 = 1;  // log(e/(1-|phi_w(a)|^2))
  double log_inv_phiaw2 = 1;  // log(e/(1-|phi_a(w)|^2))

  double term(double pw, double pa, double pm) const {
    return std::exp(pw * log_u + pa * log_ua + pm * log_m);
  }
};

EvalCtx make_ctx(const KernelFamily& fam, const PointPair& pts) {
  EvalCtx c;
  if (fam.is_radial()) {
    if (!pts.rho) throw DomainError("eval_rhs: radial family needs rho");
    const double u = 1.0 - *pts.rho;
    c.log_u = std::log(u);
    c.Lu = 1.0 - c.log_u;
    c.LLu = std::log(2.0 - c.log_u);
    return c;
  }
  require_interior(pts.w, "eval_rhs(w)");
  const double u = 1.0 - pts.w.norm_sq();
  c.log_u = std::log(u);
  c.Lu = 1.0 - c.log_u;
  c.LLu = std::log(2.0 - c.log_u);
  if (fam.is_two_point()) {
    if (!pts.second) throw DomainError("eval_rhs: two-point family needs a second point");
    c.two_point = true;
    const CPoint& a = *pts.second;
    require_interior(a, "eval_rhs(second)");
    const double ua = 1.0 - a.norm_sq();
    const double m = std::abs(1.0 - inner(pts.w, a));
    c.log_ua = std::log(ua);
    c.Lua = 1.0 - c.log_ua;
    c.log_m = std::log(m);
    c.Lm = 1.0 - c.log_m;
    const CPoint phi_wa = mobius(pts.w, a);
    const CPoint phi_aw = mobius(a, pts.w);
    c.log_phi_wa = 1.0 - std::log(std::abs(1.0 - inner(pts.w, phi_wa)));
    c.log_phi_aw = 1.0 - std::log(std::abs(1.0 - inner(a, phi_aw)));
    c.log_inv_phiwa2 = 1.0 - std::log1p(-phi_wa.norm_sq());
    c.log_inv_phiaw2 = 1.0 - std::log1p(-phi_aw.norm_sq());
  }
  return c;
}

struct CaseSpec {
  int index;
  std::string cond;
  std::function<bool()> pred;
  std::vector<std::function<double(const EvalCtx&)>> term_fns;  // display terms; value = sum
  std::vector<RhsTerm> terms;

  double value(const EvalCtx& c) const {
    double v = 0;
    for (const auto& f : term_fns) v += f(c);
    return v;
  }
};

// shared by Prop A and Prop 3.1 / Lemma 2.1 power cases
double powk(double base, double k) { return k == 0.0 ? 1.0 : std::pow(base, k); }

std::vector<CaseSpec> cases_for(const KernelFamily& fam) {
  const double n1 = fam.n + 1.0;
  const double s1 = fam.t - fam.delta;
  const double s2 = fam.r - fam.delta;
  const double s12 = fam.t + fam.r - fam.delta;
  const double k = fam.k;

  switch (fam.tag) {
    case FamilyTag::PropA_I:
    case FamilyTag::PropA_J: {
      const double cc = fam.c;
      return {
          {1, "bounded", [cc] { return cc < 0; },
           {[](const EvalCtx&) { return 1.0; }}, {{0, 0, 0, false}}},
          {2, "c=0: log(e/(1−|z|²))", [cc] { return cc == 0; },
           {[](const EvalCtx& c) { return c.Lu; }}, {{0, 0, 0, true}}},
          {3, "c>0: (1−|z|²)^{−c}", [cc] { return cc > 0; },
           {[cc](const EvalCtx& c) { return c.term(-cc, 0, 0); }}, {{-cc, 0, 0, false}}},
      };
    }
    case FamilyTag::L21_I1:
    case FamilyTag::L21_I2: {
      const double cc = fam.c;
      const bool is_i2 = fam.tag == FamilyTag::L21_I2;
      std::vector<CaseSpec> v = {
          {1, "c=0, k<−1: bounded", [cc, k] { return cc == 0 && k < -1; },
           {[](const EvalCtx&) { return 1.0; }}, {{0, 0, 0, false}}},
          {2, "c>0: (1−ρ)^{−c}log^k(e/(1−ρ))", [cc, is_i2] { return cc > 0 && !is_i2; },
           {[cc, k](const EvalCtx& c) { return c.term(-cc, 0, 0) * powk(c.Lu, k); }},
           {{-cc, 0, 0, k != 0}}},
          {3, "c=0, k>−1: log^{k+1}(e/(1−ρ))", [cc, k] { return cc == 0 && k > -1; },
           {[k](const EvalCtx& c) { return powk(c.Lu, k + 1); }}, {{0, 0, 0, true}}},
          {4, "c=0, k=−1: loglog(e²/(1−ρ))", [cc, k] { return cc == 0 && k == -1; },
           {[](const EvalCtx& c) { return c.LLu; }}, {{0, 0, 0, true}}},
      };
      return v;
    }
    case FamilyTag::P31_G:
    case FamilyTag::P31_F: {
      const double cc = fam.c;
      return {
          {1, "c<0, or c=0 and k<−1: bounded",
           [cc, k] { return cc < 0 || (cc == 0 && k < -1); },
           {[](const EvalCtx&) { return 1.0; }}, {{0, 0, 0, false}}},
          {2, "c>0: (1−|w|²)^{−c}log^k(e/(1−|w|²))", [cc] { return cc > 0; },
           {[cc, k](const EvalCtx& c) { return c.term(-cc, 0, 0) * powk(c.Lu, k); }},
           {{-cc, 0, 0, k != 0}}},
          {3, "c=0, k>−1: log^{k+1}(e/(1−|w|²))", [cc, k] { return cc == 0 && k > -1; },
           {[k](const EvalCtx& c) { return powk(c.Lu, k + 1); }}, {{0, 0, 0, true}}},
          {4, "c=0, k=−1: loglog(e²/(1−|w|²))", [cc, k] { return cc == 0 && k == -1; },
           {[](const EvalCtx& c) { return c.LLu; }}, {{0, 0, 0, true}}},
      };
    }
    case FamilyTag::PropB: {
      const double t = fam.t, r = fam.r, d = fam.delta;
      return {
          {1, "t+r−δ<n+1", [=] { return s12 < n1; },
           {[](const EvalCtx&) { return 1.0; }}, {{0, 0, 0, false}}},
          {2, "t+r−δ=n+1, t>0, r>0", [=] { return s12 == n1 && t > 0 && r > 0; },
           {[k](const EvalCtx& c) { return powk(c.Lm, k + 1); }}, {{0, 0, 0, true}}},
          {3, "t−δ=n+1>r−δ, r>0", [=] { return s1 == n1 && s2 < n1 && r > 0; },
           {[r, k](const EvalCtx& c) { return c.term(0, 0, -r) * powk(c.Lu, k) * c.log_phi_wa; }},
           {{0, 0, -r, true}}},
          {4, "t+r−δ>n+1>max{r−δ,t−δ}", [=] { return s12 > n1 && s1 < n1 && s2 < n1; },
           {[=](const EvalCtx& c) { return c.term(0, 0, -(s12 - n1)) * powk(c.Lm, k); }},
           {{0, 0, -(s12 - n1), k != 0}}},
          {5, "t−δ=n+1=r−δ", [=] { return s1 == n1 && s2 == n1; },
           {[=](const EvalCtx& c) { return c.term(0, 0, -(d + n1)) * powk(c.Lu, k) * c.log_phi_wa; },
            [=](const EvalCtx& c) { return c.term(0, 0, -(d + n1)) * powk(c.Lua, k) * c.log_phi_aw; }},
           {{0, 0, -(d + n1), true}, {0, 0, -(d + n1), true}}},
          {6, "t−δ>n+1>r−δ", [=] { return s1 > n1 && s2 < n1; },
           {[=](const EvalCtx& c) { return c.term(-(s1 - n1), 0, -r) * powk(c.Lu, k); }},
           {{-(s1 - n1), 0, -r, k != 0}}},
          {7, "t−δ>n+1, r−δ>n+1", [=] { return s1 > n1 && s2 > n1; },
           {[=](const EvalCtx& c) { return c.term(n1 + d - t, 0, -r) * powk(c.Lu, k); },
            [=](const EvalCtx& c) { return c.term(0, n1 + d - r, -t) * powk(c.Lua, k); }},
           {{n1 + d - t, 0, -r, k != 0}, {0, n1 + d - r, -t, k != 0}}},
          {8, "t−δ>n+1=r−δ", [=] { return s1 > n1 && s2 == n1; },
           {[=](const EvalCtx& c) { return c.term(-(s1 - n1), 0, -(d + n1)) * powk(c.Lu, k); },
            [=](const EvalCtx& c) { return c.term(0, 0, -t) * powk(c.Lua, k) * c.log_phi_aw; }},
           {{-(s1 - n1), 0, -(d + n1), k != 0}, {0, 0, -t, true}}},
          {9, "t−δ=n+1, r=0", [=] { return s1 == n1 && r == 0; },
           {[k](const EvalCtx& c) { return powk(c.Lu, k + 1); }}, {{0, 0, 0, true}}},
      };
    }
    case FamilyTag::PropC: {
      const double t = fam.t, r = fam.r, n = fam.n;
      const double srn = t + r + n;
      return {
          {1, "t+r+n<0", [=] { return srn < 0; },
           {[](const EvalCtx&) { return 1.0; }}, {{0, 0, 0, false}}},
          {2, "t+r+n=0", [=] { return srn == 0; },
           {[](const EvalCtx& c) { return c.Lm; }}, {{0, 0, 0, true}}},
          {3, "t=0>r", [=] { return t == 0 && r < 0; },
           {[=](const EvalCtx& c) { return c.term(0, 0, -(n + r)) * c.log_phi_wa; }},
           {{0, 0, -(n + r), true}}},
          {4, "t+r+n>0>max{r,t}", [=] { return srn > 0 && t < 0 && r < 0; },
           {[=](const EvalCtx& c) { return c.term(0, 0, -srn); }}, {{0, 0, -srn, false}}},
          {5, "t=0=r", [=] { return t == 0 && r == 0; },
           {[=](const EvalCtx& c) { return c.term(0, 0, -n) * c.log_inv_phiwa2; }},
           {{0, 0, -n, true}}},
          {6, "t>0>r", [=] { return t > 0 && r < 0; },
           {[=](const EvalCtx& c) { return c.term(-t, 0, -(n + r)); }},
           {{-t, 0, -(n + r), false}}},
          {7, "t>0, r>0", [=] { return t > 0 && r > 0; },
           {[=](const EvalCtx& c) { return c.term(-t, 0, -(n + r)); },
            [=](const EvalCtx& c) { return c.term(0, -r, -(n + t)); }},
           {{-t, 0, -(n + r), false}, {0, -r, -(n + t), false}}},
          {8, "t>0=r", [=] { return t > 0 && r == 0; },
           {[=](const EvalCtx& c) { return c.term(-t, 0, -n); },
            [=](const EvalCtx& c) { return c.term(0, 0, -(n + t)) * c.log_inv_phiaw2; }},
           {{-t, 0, -n, false}, {0, 0, -(n + t), true}}},
      };
    }
    case FamilyTag::P32: {
      const double r = fam.r;
      return {
          {1, "r+t−δ>n+1>max{t−δ,r−δ}", [=] { return s12 > n1 && s1 < n1 && s2 < n1; },
           {[=](const EvalCtx& c) { return c.term(0, 0, -(s12 - n1)); }},
           {{0, 0, -(s12 - n1), false}}},
          {2, "t−δ=n+1>r−δ", [=] { return s1 == n1 && s2 < n1; },
           {[=](const EvalCtx& c) {
             return c.term(0, 0, -r) * powk(c.Lm, -k) * powk(c.Lu, k) * c.log_phi_wa;
           }},
           {{0, 0, -r, true}}},
          {3, "t−δ>n+1>r−δ", [=] { return s1 > n1 && s2 < n1; },
           {[=](const EvalCtx& c) {
             return c.term(-(s1 - n1), 0, -r) * powk(c.Lm, -k) * powk(c.Lu, k);
           }},
           {{-(s1 - n1), 0, -r, true}}},
      };
    }
    case FamilyTag::L22: {
      const double t = fam.t, r = fam.r, n = fam.n;
      return {
          {0, "one-sided lower bound", [] { return true; },
           {[=](const EvalCtx& c) { return c.term(-(t - n), 0, -r) * powk(c.Lm, k); }},
           {{-(t - n), 0, -r, true}}},
      };
    }
  }
  throw DomainError("cases_for: unhandled family");
}

Prop prop_of(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::PropA_I:
    case FamilyTag::PropA_J: return Prop::A;
    case FamilyTag::L21_I1:
    case FamilyTag::L21_I2: return Prop::L21;
    case FamilyTag::P31_G:
    case FamilyTag::P31_F: return Prop::P31;
    case FamilyTag::PropB: return Prop::B;
    case FamilyTag::PropC: return Prop::C;
    case FamilyTag::P32: return Prop::P32;
    case FamilyTag::L22: return Prop::L22;
  }
  throw DomainError("prop_of: unhandled family");
}

const CaseSpec& matching_case(const KernelFamily& fam, const std::vector<CaseSpec>& specs) {
  for (const CaseSpec& cs : specs)
    if (cs.pred()) return cs;
  throw UncoveredRegime("parameters of " + fam.describe() + " are covered by no case of Proposition " +
                        to_string(prop_of(fam.tag)));
}

}  // namespace

CaseId classify(const KernelFamily& fam) {
  const auto specs = cases_for(fam);
  const CaseSpec& cs = matching_case(fam, specs);
  return CaseId{prop_of(fam.tag), cs.index, cs.cond};
}

int count_matching_cases(const KernelFamily& fam) {
  int cnt = 0;
  for (const CaseSpec& cs : cases_for(fam))
    if (cs.pred()) ++cnt;
  return cnt;
}

std::pair<CaseId, double> eval_rhs(const KernelFamily& fam, const PointPair& pts) {
  const auto specs = cases_for(fam);
  const CaseSpec& cs = matching_case(fam, specs);
  const EvalCtx ctx = make_ctx(fam, pts);
  return {CaseId{prop_of(fam.tag), cs.index, cs.cond}, cs.value(ctx)};
}

std::vector<double> eval_rhs_term_values(const KernelFamily& fam, const PointPair& pts) {
  const auto specs = cases_for(fam);
  const CaseSpec& cs = matching_case(fam, specs);
  const EvalCtx ctx = make_ctx(fam, pts);
  std::vector<double> out;
  out.reserve(cs.term_fns.size());
  for (const auto& f : cs.term_fns) out.push_back(f(ctx));
  return out;
}

std::vector<RhsTerm> rhs_terms(const KernelFamily& fam) {
  const auto specs = cases_for(fam);
  return matching_case(fam, specs).terms;
}

Note1Forms note1_forms(const CPoint& w, const CPoint& a, double delta, double t, double k0) {
  require_interior(w, "note1_forms(w)");
  require_interior(a, "note1_forms(a)");
  require_same_dim(w, a, "note1_forms");
  const int n = w.dim();
  const double eps = t - delta - n - 1;
  if (!(eps > 0)) throw DomainError("note1_forms: requires t - delta > n + 1");

  const double u = 1.0 - w.norm_sq();
  const double ua = 1.0 - a.norm_sq();
  const double m = std::abs(1.0 - inner(w, a));
  const CPoint phi_aw = mobius(a, w);
  const double Lu = 1.0 - std::log(u);
  const double Lua = 1.0 - std::log(ua);

  const double first = std::pow(u, delta + n + 1 - t) * std::pow(m, -(delta + n + 1.0)) *
                       powk(Lu, k0);
  const double second_base = std::pow(m, -t) * powk(Lua, k0);
  const double L1 = first + second_base * (1.0 - std::log1p(-phi_aw.norm_sq()));
  const double L2 = first + second_base * (1.0 - std::log(std::abs(1.0 - inner(phi_aw, a))));

  // M = sup_{0<x<2} x^eps log(e/x): stationary point e^{1-1/eps}, endpoint 2
  const double xstar = std::exp(1.0 - 1.0 / eps);
  double M = std::pow(2.0, eps) * (1.0 - std::log(2.0));
  if (xstar < 2.0) M = std::max(M, std::pow(xstar, eps) / eps);
  return {L1, L2, M};
}

SupBound21 sup_bound_21(double eps, double y) {
  if (!(eps > 0)) throw DomainError("sup_bound_21: eps must be > 0");
  const double h2 = std::pow(2.0, eps) * std::pow(1.0 - std::log(2.0), y);
  double sup = h2;
  if (y > 0) {
    const double xstar = std::exp(1.0 - y / eps);
    if (xstar < 2.0) sup = std::max(h2, std::exp(eps - y) * std::pow(y / eps, y));
  }
  const double bound =
      std::max(std::exp(eps - std::abs(y)) * std::pow((std::abs(y) + 1.0) / eps, std::abs(y)), h2);
  if (!(sup >= 1.0 - 1e-12) || !(sup <= bound * (1.0 + 1e-12)))
    throw std::logic_error("sup_bound_21: closed-form bound violated");
  return {sup, bound};
}

}  // namespace ballasy
