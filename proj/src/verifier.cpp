#include "ballasy/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <set>
#include <thread>

namespace ballasy {

const char* to_string(Coupling c) {
  switch (c) {
    case Coupling::none: return "none";
    case Coupling::same: return "same";
    case Coupling::antipodal: return "antipodal";
    case Coupling::fixed: return "fixed";
    case Coupling::rotated: return "rotated";
  }
  return "?";
}

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("BALL_ASY_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

SweepPlan SweepPlan::dyadic(int m_lo, int m_hi, int n, Coupling coupling) {
  SweepPlan p;
  for (int mm = m_lo; mm <= m_hi; ++mm) {
    p.m.push_back(mm);
    p.radii.push_back(1.0 - std::pow(2.0, -mm));
  }
  p.directions.push_back(CPoint::axis(n, 0));
  p.coupling = coupling;
  p.a0 = CPoint::axis(n, 0, Cx(0.3, 0));
  return p;
}

void SweepPlan::validate(const KernelFamily& fam) const {
  if (radii.empty()) throw DomainError("SweepPlan: no radii");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0) || !(radii[i] < 1.0 - 1e-6))
      throw DomainError("SweepPlan: radii must lie in (0, 1-1e-6)");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw DomainError("SweepPlan: radii must be strictly increasing");
  }
  if (!fam.is_radial()) {
    if (directions.empty()) throw DomainError("SweepPlan: no directions");
    for (const CPoint& d : directions) {
      if (d.dim() != fam.n) throw DomainError("SweepPlan: direction dimension mismatch");
      if (std::abs(d.norm() - 1.0) > 1e-12) throw DomainError("SweepPlan: directions must be unit");
    }
    if (fam.is_two_point() && coupling == Coupling::none)
      throw DomainError("SweepPlan: two-point family needs a coupling");
    if (fam.is_two_point() && coupling == Coupling::fixed) {
      if (a0.dim() != fam.n) throw DomainError("SweepPlan: a0 dimension mismatch");
      require_interior(a0, "SweepPlan::a0");
    }
  }
}

namespace {

PointPair points_for(const KernelFamily& fam, const SweepPlan& plan, double radius,
                     const CPoint& dir) {
  if (fam.is_radial()) return PointPair::radial(radius);
  CPoint w = dir.scaled(Cx(radius, 0));
  if (!fam.is_two_point()) return PointPair::single(std::move(w));
  switch (plan.coupling) {
    case Coupling::same: {
      CPoint a = w;
      return PointPair::pair(std::move(w), std::move(a));
    }
    case Coupling::antipodal: {
      CPoint a = -w;
      return PointPair::pair(std::move(w), std::move(a));
    }
    case Coupling::fixed:
      return PointPair::pair(std::move(w), plan.a0);
    case Coupling::rotated: {
      CPoint a = w.scaled(std::polar(1.0, plan.theta));
      return PointPair::pair(std::move(w), std::move(a));
    }
    case Coupling::none:
      break;
  }
  throw DomainError("points_for: two-point family needs a coupling");
}

struct Ols {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  void add(double x, double y) {
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope() const { return (n * sxy - sx * sy) / (n * sxx - sx * sx); }
};

bool usable(const SweepRow& r) {
  return !r.excluded && r.lhs > 0 && r.rhs > 0 && r.lhs_err <= 1e-3 * r.lhs;
}

// window of lhs/rhs over rows whose radius is among the `count` largest
double tail_window(const std::vector<SweepRow>& rows, const std::vector<double>& radii,
                   size_t count) {
  const size_t lo = radii.size() > count ? radii.size() - count : 0;
  double mn = 0, mx = 0;
  bool first = true;
  for (const SweepRow& r : rows) {
    if (!usable(r) || r.radius < radii[lo]) continue;
    if (first) {
      mn = mx = r.ratio;
      first = false;
    } else {
      mn = std::min(mn, r.ratio);
      mx = std::max(mx, r.ratio);
    }
  }
  return first ? 0.0 : mx / mn;
}

}  // namespace

double predicted_exponent(const KernelFamily& fam, Coupling coupling) {
  double ca = 0, s = 0;  // d log(1-|a|^2) / d log u  and  d log|1-<w,a>| / d log u
  switch (coupling) {
    case Coupling::same: ca = 1; s = 1; break;
    case Coupling::antipodal: ca = 1; s = 0; break;
    case Coupling::rotated: ca = 1; s = 0; break;
    case Coupling::fixed:
    case Coupling::none: break;
  }
  double best = 0;
  bool first = true;
  for (const RhsTerm& t : rhs_terms(fam)) {
    const double e = t.pow_u + t.pow_ua * ca + t.pow_m * s;
    best = first ? e : std::min(best, e);  // the fastest-growing term dominates
    first = false;
  }
  return best;
}

SweepReport run_sweep(const KernelFamily& fam, const SweepPlan& plan) {
  plan.validate(fam);
  SweepReport rep{fam, plan, classify(fam), {}, {}};

  const int ndir = fam.is_radial() ? 1 : static_cast<int>(plan.directions.size());
  const int nrows = static_cast<int>(plan.radii.size()) * ndir;
  rep.rows.resize(nrows);

  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next.fetch_add(1); i < nrows; i = next.fetch_add(1)) {
      const int ri = i / ndir;
      const int di = i % ndir;
      SweepRow row;
      row.index = i;
      row.m = ri < static_cast<int>(plan.m.size()) ? plan.m[ri] : -1;
      row.radius = plan.radii[ri];
      row.dir_index = di;
      row.coupling = fam.is_two_point() ? plan.coupling : Coupling::none;
      if (row.m >= 0) {
        const double y = std::pow(2.0, -row.m);
        row.u = fam.is_radial() ? y : y * (2.0 - y);
      } else {
        row.u = fam.is_radial() ? 1.0 - row.radius : 1.0 - row.radius * row.radius;
      }
      try {
        const CPoint dir = fam.is_radial() ? CPoint() : plan.directions[di];
        const PointPair pts = points_for(fam, plan, row.radius, dir);
        const IntegrationResult lhs = eval_lhs(fam, pts, plan.cfg);
        auto [cid, rhs] = eval_rhs(fam, pts);
        const std::vector<double> tv = eval_rhs_term_values(fam, pts);
        if (tv.size() > 1) {
          int dom = 0;
          for (size_t ti = 1; ti < tv.size(); ++ti)
            if (tv[ti] > tv[dom]) dom = static_cast<int>(ti);
          row.note = "rhs term " + std::to_string(dom + 1) + " dominant";
        }
        if (plan.rhs_exponent_offset != 0.0)
          rhs *= std::pow(row.u, -plan.rhs_exponent_offset);
        row.lhs = lhs.value;
        row.lhs_err = lhs.error_estimate;
        row.evaluations = lhs.evaluations;
        row.rhs = rhs;
        row.ratio = lhs.value / rhs;
        row.case_label = cid.label();
      } catch (const QuadratureFailure& e) {
        row.excluded = true;
        row.note = e.what();
        row.lhs = e.partial_value;
        row.lhs_err = e.error_estimate;
        row.case_label = rep.case_id.label();
      }
      rep.rows[i] = std::move(row);
    }
  };

  const int workers = std::min(worker_count(), nrows);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (const SweepRow& r : rep.rows) {
    if (!r.excluded && r.case_label != rep.case_id.label())
      throw DomainError("run_sweep: case drift across the plan (" + r.case_label + " vs " +
                        rep.case_id.label() + ")");
  }

  SweepSummary& s = rep.summary;
  s.case_label = rep.case_id.label();
  s.one_sided = fam.tag == FamilyTag::L22;
  s.predicted = predicted_exponent(fam, fam.is_two_point() ? plan.coupling : Coupling::none);
  bool first = true;
  for (const SweepRow& r : rep.rows) {
    if (r.excluded) {
      ++s.excluded_rows;
      continue;
    }
    if (!usable(r)) continue;
    if (first) {
      s.ratio_min = s.ratio_max = r.ratio;
      first = false;
    } else {
      s.ratio_min = std::min(s.ratio_min, r.ratio);
      s.ratio_max = std::max(s.ratio_max, r.ratio);
    }
  }
  s.window = first ? 0.0 : s.ratio_max / s.ratio_min;
  s.window_last4 = tail_window(rep.rows, plan.radii, 4);
  s.window_last8 = tail_window(rep.rows, plan.radii, 8);
  s.stabilization = s.window_last8 > 0 && s.window_last4 >= 0.75 * s.window_last8;

  // exponent fits over the last six radii
  const size_t tail_lo = plan.radii.size() > 6 ? plan.radii.size() - 6 : 0;
  Ols drift, raw, logfit;
  for (const SweepRow& r : rep.rows) {
    if (!usable(r) || r.radius < plan.radii[tail_lo]) continue;
    const double x = std::log(r.u);
    drift.add(x, std::log(r.ratio));
    raw.add(x, std::log(r.lhs));
    logfit.add(std::log(1.0 - std::log(r.u)), std::log(r.lhs));
  }
  if (drift.n >= 2) {
    s.slope = s.predicted + drift.slope();
    s.raw_slope = raw.slope();
    s.log_slope = logfit.slope();
  } else {
    s.slope = s.predicted;
    s.raw_slope = 0;
    s.log_slope = 0;
  }
  return rep;
}

std::pair<double, double> fit_boundary_exponent(const SweepReport& report) {
  int count = 0;
  const auto& radii = report.plan.radii;
  const size_t tail_lo = radii.size() > 6 ? radii.size() - 6 : 0;
  for (const SweepRow& r : report.rows)
    if (usable(r) && r.radius >= radii[tail_lo]) ++count;
  if (count < 4) throw DomainError("fit_boundary_exponent: fewer than 4 usable tail rows");
  return {report.summary.slope, report.summary.predicted};
}

VerdictResult verdict(const SweepReport& report, double window_bound, double slope_tol) {
  const SweepSummary& s = report.summary;
  char buf[256];
  if (s.one_sided) {
    const bool pass = s.ratio_min >= 1.0 / window_bound;
    std::snprintf(buf, sizeof buf, "one-sided: ratio_min=%.4g %s 1/window_bound=%.4g",
                  s.ratio_min, pass ? ">=" : "<", 1.0 / window_bound);
    return {pass, buf};
  }
  const bool w_ok = s.window > 0 && s.window <= window_bound;
  const bool e_ok = std::abs(s.slope - s.predicted) <= slope_tol;
  const bool st_ok = s.stabilization;
  std::snprintf(buf, sizeof buf,
                "window=%.4g (bound %.4g) %s; |slope-predicted|=|%.4g-%.4g|=%.4g (tol %.4g) %s; "
                "stabilization %s",
                s.window, window_bound, w_ok ? "ok" : "FAIL", s.slope, s.predicted,
                std::abs(s.slope - s.predicted), slope_tol, e_ok ? "ok" : "FAIL",
                st_ok ? "ok" : "FAIL");
  return {w_ok && e_ok && st_ok, buf};
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(const SweepReport& report, std::ostream& os) {
  os << "# schema=1\n";
  os << "m,radius,dir_index,coupling,lhs,lhs_err,rhs,ratio,case_id\n";
  for (const SweepRow& r : report.rows) {
    os << r.m << ',' << fmt_double(r.radius) << ',' << r.dir_index << ',' << to_string(r.coupling)
       << ',' << fmt_double(r.lhs) << ',' << fmt_double(r.lhs_err) << ',' << fmt_double(r.rhs)
       << ',' << fmt_double(r.ratio) << ',' << r.case_label << '\n';
  }
}

std::string summary_json(const SweepReport& report, const VerdictResult& v) {
  const SweepSummary& s = report.summary;
  std::string out = "{\n";
  out += "  \"case\": \"" + s.case_label + "\",\n";
  out += "  \"window\": " + fmt_double(s.window) + ",\n";
  out += "  \"slope\": " + fmt_double(s.slope) + ",\n";
  out += "  \"predicted\": " + fmt_double(s.predicted) + ",\n";
  out += std::string("  \"verdict\": \"") + (v.pass ? "pass" : "fail") + "\",\n";
  out += "  \"excluded_rows\": " + std::to_string(s.excluded_rows) + "\n";
  out += "}\n";
  return out;
}

}  // namespace ballasy
