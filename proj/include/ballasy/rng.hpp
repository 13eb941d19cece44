#pragma once

#include <cmath>
#include <cstdint>

#include "ballasy/geometry.hpp"

namespace ballasy {

// SplitMix64: tiny deterministic generator. Monte Carlo streams are keyed by
// (seed, sample index), so each sample's values are independent of evaluation
// order and can be drawn concurrently.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0,1]
  double uniform() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

  void normal_pair(double* g1, double* g2) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    *g1 = r * std::cos(2.0 * M_PI * u2);
    *g2 = r * std::sin(2.0 * M_PI * u2);
  }
};

inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index) {
  // one extra mix decorrelates neighbouring indices
  SplitMix64 s(seed ^ (0x6a09e667f3bcc909ULL + index * 0xd1342543de82ef95ULL));
  s.next();
  return s;
}

// Uniform point on the unit sphere of C^n (normalized complex Gaussian vector).
inline CPoint sample_sphere(int n, SplitMix64& rng) {
  std::vector<Cx> c(n);
  double ns = 0;
  for (int i = 0; i < n; ++i) {
    double a, b;
    rng.normal_pair(&a, &b);
    c[i] = Cx(a, b);
    ns += a * a + b * b;
  }
  const double inv = 1.0 / std::sqrt(ns);
  for (auto& z : c) z *= inv;
  return CPoint(std::move(c));
}

// Uniform point of the ball w.r.t. normalized volume: r ~ U^(1/2n) times a sphere point.
inline CPoint sample_ball(int n, SplitMix64& rng) {
  CPoint xi = sample_sphere(n, rng);
  const double r = std::pow(rng.uniform(), 1.0 / (2.0 * n));
  return xi.scaled(Cx(r, 0));
}

}  // namespace ballasy
