#include <cmath>
#include <random>

#include "gdnls/errors.hpp"
#include "gdnls/estimate_lab.hpp"
#include "lab_internal.hpp"

namespace gdnls {
namespace {

// Spectra of the four high inputs sit at |ξ| ∈ N1[1 - 1/70, 1 + 1/70], so a
// free wave keeps |τ + N1²| ≤ N1²/32 (and |τ - N1²| ≤ N1²/32 for its
// conjugate). The low input fills its whole band N1/16.
Profile narrow_spectrum(double N1, double box, int nx, std::mt19937_64& rng, int sign) {
  std::normal_distribution<double> gauss;
  Profile h(box, nx);
  for (int k = 0; k < nx; ++k) {
    const double xi = h.xi(k);
    if (sign * xi <= 0 || std::abs(std::abs(xi) - N1) > N1 / 70) continue;
    h.values[k] = {gauss(rng), gauss(rng)};
  }
  return h;
}

Profile band_spectrum(double N, double box, int nx, std::mt19937_64& rng) {
  return fourier_x(random_band_data(N, rng(), box, nx));
}

Profile evolve_spectrum(const Profile& h, double t) {
  Profile out = h;
  for (int k = 0; k < out.nx(); ++k) out.values[k] *= std::polar(1.0, -t * out.xi(k) * out.xi(k));
  return inverse_fourier_x(out);
}

}  // namespace

namespace lab {

double low_modulation_fraction(const SpaceTimeField& u, double threshold) {
  const GridSpec& g = u.grid;
  const SpaceTimeField spec = fourier_xt(u);
  double total = 0, low = 0;
  for (int j = 0; j < g.nt; ++j) {
    const double tau = g.tau(j);
    for (int k = 0; k < g.nx; ++k) {
      const double xi = g.xi(k), e = std::norm(spec.at(k, j));
      total += e;
      if (std::abs(tau + xi * xi) < threshold) low += e;
    }
  }
  return total > 0 ? low / total : 0;
}

}  // namespace lab

ModulationReport modulation_threshold_check(double N1, const std::string& pattern, double amplitude) {
  if (!is_dyadic(N1) || N1 < 16) throw BandError("modulation check needs dyadic N1 >= 16");
  const bool control = pattern == "control";
  int plus = 0;  // sign of the Riesz projection on u1..u3
  bool conj4 = false;
  if (pattern == "i") plus = 1;
  else if (pattern == "ii") plus = -1;
  else if (pattern == "iii") plus = 1, conj4 = true;
  else if (pattern == "iv") plus = -1, conj4 = true;
  else if (!control) throw ConfigError("unknown modulation pattern '" + pattern + "'");

  // The grid scales with N1: the box resolves the narrow bands with ~7 modes a
  // side and the window resolves N1²/64 in τ.
  const double box = 512 * kPi / N1, half = 512 / (N1 * N1);
  const GridSpec g{box, lab::next_pow2(1.2 * 4.5 * N1 * box / kPi), -half, half, 2048};
  const double sigma = 2 * half / 12;

  std::mt19937_64 rng(lab::mix_seed(0x6d6f64, N1, 0, static_cast<std::uint64_t>(plus + 3 + 4 * conj4)));
  // Input spectra. Case (iii) takes P_- of ubar, the conjugate of P_+u4, and
  // case (iv) takes P_+ of ubar, the conjugate of P_-u4.
  std::vector<Profile> highs;
  for (int i = 0; i < 4; ++i) {
    Profile h = narrow_spectrum(N1, box, g.nx, rng, control ? 1 : plus);
    if (control) {
      const Profile neg = narrow_spectrum(N1, box, g.nx, rng, -1);
      for (int k = 0; k < g.nx; ++k) h.values[k] += neg.values[k];
    }
    const double n = l2_norm_spectral_x(h);
    highs.push_back((amplitude / n) * h);
  }
  const Profile low = amplitude * band_spectrum(N1 / 16, box, g.nx, rng);

  SpaceTimeField prod(g);
  for (int j = 0; j < g.nt; ++j) {
    const double t = g.t(j), w = std::exp(-0.5 * t * t / (sigma * sigma));
    Profile acc = evolve_spectrum(low, t);
    for (int i = 0; i < 4; ++i) {
      const Profile f = evolve_spectrum(highs[i], t);
      const bool c = i == 3 && conj4;
      for (int m = 0; m < g.nx; ++m) acc.values[m] *= c ? std::conj(f.values[m]) : f.values[m];
    }
    for (int m = 0; m < g.nx; ++m) prod.at(m, j) = w * acc.values[m];
  }

  const double total = l2_norm(prod);
  ModulationReport r;
  r.N1 = N1;
  r.pattern = pattern;
  r.output_mass = total;
  r.low_mass_fraction = total > 0 ? lab::low_modulation_fraction(prod, N1 * N1 / 64) : 0;
  r.contracted = !control;
  r.passed = control || r.low_mass_fraction <= 1e-3;
  return r;
}

}  // namespace gdnls
