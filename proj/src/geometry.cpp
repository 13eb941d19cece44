#include "ballasy/geometry.hpp"

#include <cmath>
#include <string>

namespace ballasy {

CPoint CPoint::axis(int n, int l, Cx scale) {
  if (n < 1 || l < 0 || l >= n) throw DomainError("CPoint::axis: bad index");
  std::vector<Cx> c(n, Cx(0, 0));
  c[l] = scale;
  return CPoint(std::move(c));
}

double CPoint::norm_sq() const {
  double s = 0;
  for (const Cx& z : c_) s += std::norm(z);
  return s;
}

double CPoint::norm() const { return std::sqrt(norm_sq()); }

CPoint CPoint::scaled(Cx factor) const {
  std::vector<Cx> c(c_);
  for (Cx& z : c) z *= factor;
  return CPoint(std::move(c));
}

void require_same_dim(const CPoint& z, const CPoint& w, const char* where) {
  if (z.dim() != w.dim())
    throw DomainError(std::string(where) + ": dimension mismatch (" +
                      std::to_string(z.dim()) + " vs " + std::to_string(w.dim()) + ")");
}

void require_interior(const CPoint& z, const char* where) {
  if (z.dim() < 1) throw DomainError(std::string(where) + ": empty point");
  if (!z.is_interior())
    throw DomainError(std::string(where) + ": point too close to the unit sphere (|z| = " +
                      std::to_string(z.norm()) + ")");
}

Cx inner(const CPoint& z, const CPoint& w) {
  require_same_dim(z, w, "inner");
  Cx s(0, 0);
  for (int i = 0; i < z.dim(); ++i) s += z[i] * std::conj(w[i]);
  return s;
}

CPoint mobius(const CPoint& a, const CPoint& z) {
  require_same_dim(a, z, "mobius");
  require_interior(a, "mobius (center)");
  require_interior(z, "mobius (argument)");

  const double a2 = a.norm_sq();
  if (a2 == 0.0) return -z;  // phi_0(z) = -z

  // phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>),
  // P_a the projection onto span(a), Q_a = I - P_a, s_a = sqrt(1-|a|^2).
  const Cx za = inner(z, a);
  const Cx proj_coef = za / a2;
  const double sa = std::sqrt(1.0 - a2);
  const Cx denom = Cx(1, 0) - za;

  std::vector<Cx> out(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    const Cx p = proj_coef * a[i];
    const Cx q = z[i] - p;
    out[i] = (a[i] - p - sa * q) / denom;
  }
  return CPoint(std::move(out));
}

double bergman_metric(const CPoint& z, const CPoint& a) {
  require_same_dim(z, a, "bergman_metric");
  require_interior(z, "bergman_metric");
  require_interior(a, "bergman_metric");
  const double m = mobius(a, z).norm();
  return 0.5 * std::log((1.0 + m) / (1.0 - m));
}

bool in_bergman_ball(const CPoint& a, double r, const CPoint& z) {
  if (!(r > 0)) throw DomainError("in_bergman_ball: radius must be positive");
  return bergman_metric(z, a) < r;
}

MobiusMap::MobiusMap(CPoint a) : center(std::move(a)) {
  require_interior(center, "MobiusMap");
}

}  // namespace ballasy
