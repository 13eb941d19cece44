#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ballasy/kernels.hpp"

namespace ballasy {

enum class Prop { A, L21, P31, B, C, P32, L22 };

const char* to_string(Prop p);

struct CaseId {
  Prop prop;
  int index;              // case number within the proposition; 0 for one-sided L22
  std::string condition;  // the case's condition, human readable

  std::string label() const;  // "B(4)", "A(1)", "2.2"
  std::string describe() const { return label() + ": " + condition; }
};

// One displayed term of a right-hand side: powers of (1-|w|^2), (1-|a|^2) and
// |1-<w,a>|; logarithmic factors are tracked only as present/absent since they
// contribute no boundary exponent.
struct RhsTerm {
  double pow_u = 0;   // exponent of (1-|w|^2)
  double pow_ua = 0;  // exponent of (1-|a|^2)
  double pow_m = 0;   // exponent of |1-<w,a>|
  bool has_log = false;
};

// The unique case of the estimate table matching the family's parameters.
// Case boundaries compare derived quantities exactly as the table states.
// Throws UncoveredRegime for admissible parameters outside every case.
CaseId classify(const KernelFamily& fam);

// Case-by-case predicate evaluation, independent of the decision tree in
// classify(); used to confirm that exactly one case matches.
int count_matching_cases(const KernelFamily& fam);

// The classified case's closed-form value at the given points. Two-term cases
// return the sum of both displayed terms.
std::pair<CaseId, double> eval_rhs(const KernelFamily& fam, const PointPair& pts);

// The individual displayed terms (one entry except for the two-term cases).
std::vector<double> eval_rhs_term_values(const KernelFamily& fam, const PointPair& pts);

// Term structure of the classified case, for boundary-exponent prediction.
std::vector<RhsTerm> rhs_terms(const KernelFamily& fam);

// The two equivalent displays of the t-delta > n+1 = r-delta regime together
// with the explicit comparison constant M = sup_{0<x<2} x^(t-delta-n-1) log(e/x).
struct Note1Forms {
  double L1, L2, M;
};
Note1Forms note1_forms(const CPoint& w, const CPoint& a, double delta, double t, double k0 = 0.0);

// sup_{0<x<2} x^eps log^y(e/x) by stationary-point analysis, together with the
// closed-form bound max{ e^(eps-|y|) ((|y|+1)/eps)^|y|, 2^eps log^y(e/2) }.
struct SupBound21 {
  double sup_value, paper_bound;
};
SupBound21 sup_bound_21(double eps, double y);

}  // namespace ballasy
