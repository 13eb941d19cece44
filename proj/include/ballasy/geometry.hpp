#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "ballasy/errors.hpp"

namespace ballasy {

using Cx = std::complex<double>;

// Interior-point operations reject anything this close to the unit sphere,
// so singular kernels are never evaluated at (numerically) boundary contact.
inline constexpr double kBoundaryMargin = 1e-14;

// A point of C^n.
class CPoint {
 public:
  CPoint() = default;
  explicit CPoint(std::vector<Cx> coords) : c_(std::move(coords)) {}
  CPoint(std::initializer_list<Cx> coords) : c_(coords) {}

  static CPoint zero(int n) { return CPoint(std::vector<Cx>(n, Cx(0, 0))); }
  // e_l scaled by `scale`
  static CPoint axis(int n, int l, Cx scale = Cx(1, 0));

  int dim() const { return static_cast<int>(c_.size()); }
  const Cx& operator[](int i) const { return c_[i]; }
  Cx& operator[](int i) { return c_[i]; }
  const std::vector<Cx>& coords() const { return c_; }

  double norm_sq() const;
  double norm() const;
  bool is_interior() const { return norm() < 1.0 - kBoundaryMargin; }

  CPoint scaled(Cx factor) const;
  CPoint operator-() const { return scaled(Cx(-1, 0)); }

 private:
  std::vector<Cx> c_;
};

// <z,w> = z_1 conj(w_1) + ... + z_n conj(w_n). Throws on dimension mismatch.
Cx inner(const CPoint& z, const CPoint& w);

// phi_a(z), the involutive automorphism of the ball with phi_a(0)=a, phi_a(a)=0.
// For n > 1 this is the projection / orthogonal-complement form.
CPoint mobius(const CPoint& a, const CPoint& z);

// beta(z,a) = (1/2) log ((1+|phi_a(z)|)/(1-|phi_a(z)|))
double bergman_metric(const CPoint& z, const CPoint& a);

// z in D(a,r) = { beta(z,a) < r }
bool in_bergman_ball(const CPoint& a, double r, const CPoint& z);

struct MobiusMap {
  CPoint center;
  explicit MobiusMap(CPoint a);
  CPoint operator()(const CPoint& z) const { return mobius(center, z); }
};

void require_same_dim(const CPoint& z, const CPoint& w, const char* where);
void require_interior(const CPoint& z, const char* where);

}  // namespace ballasy
