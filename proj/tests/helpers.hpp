#pragma once

#include <cmath>
#include <random>

#include "gdnls/grid.hpp"

namespace testing_support {

using gdnls::cplx;

inline gdnls::Profile plane_wave(double L, int nx, double xi0) {
  gdnls::Profile p(L, nx);
  for (int m = 0; m < nx; ++m) p.values[m] = std::polar(1.0, xi0 * p.x(m));
  return p;
}

inline gdnls::Profile gaussian(double L, int nx, double width, double centre = 0, double xi0 = 0) {
  gdnls::Profile p(L, nx);
  for (int m = 0; m < nx; ++m) {
    const double y = (p.x(m) - centre) / width;
    p.values[m] = std::exp(-0.5 * y * y) * std::polar(1.0, xi0 * p.x(m));
  }
  return p;
}

inline gdnls::Profile random_profile(double L, int nx, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0, 1);
  gdnls::Profile p(L, nx);
  for (auto& v : p.values) v = {n(rng), n(rng)};
  return p;
}

// Random spectrum on |xi| <= kmax (band-limited).
inline gdnls::Profile random_band_limited(double L, int nx, double kmax, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0, 1);
  gdnls::Profile h(L, nx);
  for (int k = 0; k < nx; ++k)
    if (std::abs(h.xi(k)) <= kmax) h.values[k] = {n(rng), n(rng)};
  return gdnls::inverse_fourier_x(h);
}

inline gdnls::SpaceTimeField random_field(const gdnls::GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0, 1);
  gdnls::SpaceTimeField f(g);
  for (auto& v : f.values) v = {n(rng), n(rng)};
  return f;
}

inline double rel_diff(const gdnls::SpaceTimeField& a, const gdnls::SpaceTimeField& b) {
  return gdnls::l2_norm(a - b) / gdnls::l2_norm(b);
}

inline double rel_diff(const gdnls::Profile& a, const gdnls::Profile& b) {
  return gdnls::l2_norm(a - b) / gdnls::l2_norm(b);
}

}  // namespace testing_support
