#pragma once

#include <cmath>
#include <random>

#include "ballasy/geometry.hpp"

namespace ballasy::testutil {

inline CPoint random_ball_point(std::mt19937_64& rng, int n, double max_radius = 0.999) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    std::vector<Cx> c(n);
    for (int i = 0; i < n; ++i) c[i] = Cx(u(rng), u(rng));
    CPoint z(std::move(c));
    const double r = z.norm();
    if (r < max_radius) return z;
  }
}

inline CPoint random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Cx> c(n);
  double ns = 0;
  for (int i = 0; i < n; ++i) {
    c[i] = Cx(g(rng), g(rng));
    ns += std::norm(c[i]);
  }
  CPoint z(std::move(c));
  return z.scaled(Cx(1.0 / std::sqrt(ns), 0));
}

inline bool close_rel(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

}  // namespace ballasy::testutil
