#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ballasy/asymptotics.hpp"
#include "ballasy/kernels.hpp"

namespace ballasy {

// Rule producing the second evaluation point from w.
enum class Coupling { none, same, antipodal, fixed, rotated };

const char* to_string(Coupling c);

struct SweepPlan {
  // radii of |w| (or of rho for the radial families); strictly increasing,
  // bounded away from 1 so quadrature stays meaningful
  std::vector<double> radii;
  std::vector<int> m;  // dyadic indices when radii are 1-2^-m; -1 otherwise
  std::vector<CPoint> directions;
  Coupling coupling = Coupling::none;
  CPoint a0;           // Coupling::fixed
  double theta = 0.1;  // Coupling::rotated
  QuadConfig cfg;
  // debug: multiply the RHS by (1-|w|^2)^{-offset}; a deliberately wrong
  // exponent must make the verdict fail
  double rhs_exponent_offset = 0.0;

  static SweepPlan dyadic(int m_lo, int m_hi, int n, Coupling coupling = Coupling::none);
  void validate(const KernelFamily& fam) const;
};

struct SweepRow {
  int index = 0;
  int m = -1;
  double radius = 0;
  double u = 0;  // 1-|w|^2 (1-rho for radial families)
  int dir_index = 0;
  Coupling coupling = Coupling::none;
  double lhs = 0, lhs_err = 0, rhs = 0, ratio = 0;
  long evaluations = 0;
  std::string case_label;
  bool excluded = false;
  std::string note;
};

struct SweepSummary {
  std::string case_label;
  double ratio_min = 0, ratio_max = 0, window = 0;
  // boundary-exponent fit over the last six radii: the displayed logarithmic
  // factors are removed before regression, so `slope` estimates the power of
  // (1-|w|^2) alone and is directly comparable with `predicted`
  double slope = 0;
  double raw_slope = 0;  // plain OLS of log(lhs) against log(1-|w|^2)
  double log_slope = 0;  // OLS of log(lhs) against log log(e/(1-|w|^2))
  double predicted = 0;  // boundary exponent of the case display under this coupling
  double window_last4 = 0, window_last8 = 0;
  bool stabilization = false;
  int excluded_rows = 0;
  bool one_sided = false;
};

struct SweepReport {
  KernelFamily fam;
  SweepPlan plan;
  CaseId case_id;
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

// Evaluates LHS and RHS over the plan grid (rows run in parallel, capped by
// BALL_ASY_THREADS) and assembles the summary deterministically in grid order.
SweepReport run_sweep(const KernelFamily& fam, const SweepPlan& plan);

// (fitted slope, predicted exponent); throws if fewer than 4 usable tail rows.
std::pair<double, double> fit_boundary_exponent(const SweepReport& report);

// Boundary exponent of the case display once the coupling ties the second
// point to w (e.g. under a=w, |1-<w,a>| scales like 1-|w|^2).
double predicted_exponent(const KernelFamily& fam, Coupling coupling);

struct VerdictResult {
  bool pass = false;
  std::string reason;
};

// Two-sided families: window + exponent + tail stabilization. The one-sided
// Lemma 2.2 bound only requires ratio_min >= 1/window_bound.
VerdictResult verdict(const SweepReport& report, double window_bound, double slope_tol);

// CSV rows ("# schema=1" header) and the JSON summary object.
void write_csv(const SweepReport& report, std::ostream& os);
std::string summary_json(const SweepReport& report, const VerdictResult& v);

int worker_count();  // hardware concurrency capped by BALL_ASY_THREADS

}  // namespace ballasy
