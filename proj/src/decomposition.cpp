#include "gdnls/decomposition.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "gdnls/norms.hpp"
#include "gdnls/propagator.hpp"

namespace gdnls {

namespace {

// ∫_0^Δ e^{isd} ds, stable as dΔ -> 0.
cplx phase_integral(double d, double span) {
  const double z = d * span;
  if (std::abs(z) < 1e-4) return span * cplx(1 - z * z / 6, z / 2);
  return (std::polar(1.0, z) - 1.0) / cplx(0, d);
}

double band_symbol(double xi, double N) { return band_multiplier({N, BandKind::band}, xi); }

void check_inputs(const CVec& F0, double N, int c, const GridSpec& grid) {
  grid.validate();
  if (static_cast<int>(F0.size()) != grid.nt) throw ShapeError("source length does not match the time grid");
  if (c < 3) throw DomainError("cutoff exponent must be at least 3");
  require_representable(N, grid.box_length, grid.nx);
  require_representable(std::ldexp(N, -c), grid.box_length, grid.nx);
}

// Discrete time spectrum F̂0(τ_m) = Σ_j F0(t_j) e^{-iτ_m t_j} dt.
CVec time_spectrum(const CVec& F0, const GridSpec& g) {
  CVec out(g.nt);
  for (int m = 0; m < g.nt; ++m) {
    const cplx step = std::polar(1.0, -g.tau(m) * g.dt());
    cplx ph = std::polar(1.0, -g.tau(m) * g.t_min);
    cplx acc = 0;
    for (int j = 0; j < g.nt; ++j) {
      acc += F0[j] * ph;
      ph *= step;
    }
    out[m] = acc * g.dt();
  }
  return out;
}

// (1/T) Σ_m F̂_m ∫_{t_min}^{t_end} e^{is(τ_m + ξ²)} ds: the time transform of
// the band-limited interpolant of F0, restricted to s < t_end, at τ = -ξ².
cplx interpolant_transform(const CVec& Fh, const GridSpec& g, double xi2, double t_end) {
  cplx acc = 0;
  for (int m = 0; m < g.nt; ++m) {
    const double d = g.tau(m) + xi2;
    acc += Fh[m] * std::polar(1.0, g.t_min * d) * phase_integral(d, t_end - g.t_min);
  }
  return acc / g.period();
}

bool symbol_support(double xi, double N, int c) {
  const double a = std::abs(xi), M = std::ldexp(N, -c);
  return a > N - 4 * M && a < 4 * N + 4 * M;
}

}  // namespace

cplx decomposition_symbol(double xi, double tau, double N, int c) {
  if (!symbol_support(xi, N, c)) return 0;
  const double M = std::ldexp(N, -c);
  const double denom = xi * xi + tau;
  double bracket = band_symbol(xi, N);
  if (tau < 0) {
    const double a = std::sqrt(-tau);
    const double pa = band_symbol(a, N);
    if (pa != 0)
      bracket -= pa / (2 * a) * (psi((xi - a) / M) * (xi + a) - psi((xi + a) / M) * (xi - a));
  }
  if (bracket == 0) return 0;
  return cplx(0, -bracket / denom);
}

GridSpec decomposition_grid(double N, int c) {
  if (c < 3) throw DomainError("cutoff exponent must be at least 3");
  // in units x~ = N x, t~ = N² t; group speeds 2ξ/N stay below 8
  const double width = std::ldexp(1.0, c);
  const double t_half = 10 + 2.5 * width;
  const double half_box = 8 * t_half + 5 * width;
  const double scaled_box = 2 * half_box;
  GridSpec g;
  g.box_length = scaled_box / N;
  g.nx = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::ceil(scaled_box * 4.5 / kPi))));
  g.t_min = -t_half / (N * N);
  g.t_max = t_half / (N * N);
  g.nt = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::ceil(2 * t_half * 17.6 / kPi))));
  return g;
}

CVec random_source(const GridSpec& grid, double N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> band(1.5, 12.0);
  std::normal_distribution<double> normal;
  const double N2 = N * N, width = 2 / N2;
  std::vector<std::pair<double, cplx>> modes;
  for (int q = 0; q < 8; ++q) modes.emplace_back(-band(rng) * N2, cplx(normal(rng), normal(rng)));
  CVec F(grid.nt);
  for (int j = 0; j < grid.nt; ++j) {
    const double t = grid.t(j);
    cplx s = 0;
    for (const auto& [tau, a] : modes) s += a * std::polar(1.0, tau * t);
    F[j] = std::exp(-0.5 * (t / width) * (t / width)) * s;
  }
  return F;
}

W0Split split_w0(const CVec& F0, double N, int c, const GridSpec& grid, double anchor) {
  check_inputs(F0, N, c, grid);
  const CVec Fh = time_spectrum(F0, grid);
  W0Split out;
  out.cutoff_exponent = c;
  out.anchor = anchor;
  Profile v0h(grid.box_length, grid.nx), lvh(grid.box_length, grid.nx);
  for (int k = 0; k < grid.nx; ++k) {
    const double xi = grid.xi(k), p = band_symbol(xi, N);
    if (p == 0) continue;
    if (xi * xi >= grid.tau_nyquist())
      throw RangeError("-xi^2 lies outside the resolved tau range; refine the time grid");
    const cplx shift = std::polar(1.0, -anchor * xi);
    v0h.values[k] = p * shift * interpolant_transform(Fh, grid, xi * xi, grid.t_max);
    lvh.values[k] = p * shift * interpolant_transform(Fh, grid, xi * xi, 0.0);
  }
  out.v0 = inverse_fourier_x(v0h);
  out.Lv0 = inverse_fourier_x(lvh);

  SpaceTimeField hh(grid);
  for (int k = 0; k < grid.nx; ++k) {
    const double xi = grid.xi(k);
    if (!symbol_support(xi, N, c)) continue;
    const cplx shift = std::polar(1.0, -anchor * xi);
    for (int m = 0; m < grid.nt; ++m)
      hh.values[std::size_t(m) * grid.nx + k] = decomposition_symbol(xi, grid.tau(m), N, c) * Fh[m] * shift;
  }
  out.h = inverse_fourier_xt(hh);
  return out;
}

SpaceTimeField heaviside_term(const W0Split& split, double N, const GridSpec& grid) {
  const double M = std::ldexp(N, -split.cutoff_exponent);
  // P_{<M} of the square wave equal to 1 on (y, y + L/2)
  Profile step(grid.box_length, grid.nx);
  for (int k = 0; k < grid.nx; ++k) {
    const double xi = grid.xi(k);
    const double cut = psi(xi / M);
    if (cut == 0) continue;
    if (k == 0) {
      step.values[k] = 0.5 * grid.box_length;
      continue;
    }
    const cplx coeff = (k % 2 == 0) ? cplx(0) : cplx(2) / cplx(0, xi);
    step.values[k] = cut * coeff * std::polar(1.0, -split.anchor * xi);
  }
  const Profile H = inverse_fourier_x(step);
  const SpaceTimeField right = free_evolve(riesz(split.v0, RieszSign::plus), grid);
  const SpaceTimeField left = free_evolve(riesz(split.v0, RieszSign::minus), grid);
  SpaceTimeField S(grid);
  for (int j = 0; j < grid.nt; ++j)
    for (int m = 0; m < grid.nx; ++m) {
      const cplx Hm = H.values[m];
      S.at(m, j) = Hm * right.at(m, j) + (1.0 - Hm) * left.at(m, j);
    }
  return S;
}

SpaceTimeField point_source_duhamel(const CVec& F0, double N, const GridSpec& grid, double anchor) {
  grid.validate();
  if (static_cast<int>(F0.size()) != grid.nt) throw ShapeError("source length does not match the time grid");
  require_representable(N, grid.box_length, grid.nx);
  const CVec Fh = time_spectrum(F0, grid);
  // Φ solves (∂t + iξ²)Φ = F0 on the anti-periodic window; then
  // ∫_0^t e^{-i(t-s)ξ²} F0(s) ds = Φ(t) - e^{-itξ²} Φ(0).
  SpaceTimeField phi(grid);
  std::vector<int> active;
  for (int k = 0; k < grid.nx; ++k) {
    const double xi = grid.xi(k);
    if (band_symbol(xi, N) == 0) continue;
    active.push_back(k);
    for (int m = 0; m < grid.nt; ++m)
      phi.values[std::size_t(m) * grid.nx + k] = Fh[m] / cplx(0, xi * xi + grid.tau(m));
  }
  inverse_fourier_t_inplace(phi);
  const int j0 = grid.zero_time_index();
  SpaceTimeField w(grid);
  for (int k : active) {
    const double xi = grid.xi(k);
    const cplx pre = band_symbol(xi, N) * std::polar(1.0, -anchor * xi);
    const cplx at0 = phi.at(k, j0);
    for (int j = 0; j < grid.nt; ++j)
      w.at(k, j) = pre * (phi.at(k, j) - std::polar(1.0, -grid.t(j) * xi * xi) * at0);
  }
  inverse_fourier_x_inplace(w);
  return w;
}

DecReport verify_dec(const CVec& F0, double N, int c, const GridSpec& grid, int d) {
  if (d < 3) throw DomainError("verify_dec needs d >= 3");
  const W0Split sp = split_w0(F0, N, c, grid);
  const SpaceTimeField w0 = point_source_duhamel(F0, N, grid);
  const SpaceTimeField recon = heaviside_term(sp, N, grid) + sp.h - free_evolve(sp.Lv0, grid);
  DecReport r;
  const double wn = l2_norm(w0);
  r.reconstruction_residual = wn > 0 ? l2_norm(w0 - recon) / wn : l2_norm(recon);

  double f2 = 0;
  for (const auto& v : F0) f2 += std::norm(v);
  const double fn = std::sqrt(f2 * grid.dt());
  if (fn == 0) return r;
  const double sN = std::sqrt(N);
  r.lv0_ratio = sN * l2_norm(sp.Lv0) / fn;
  r.v0_ratio = sN * l2_norm(sp.v0) / fn;

  const SpaceTimeField hh = fourier_xt(sp.h);
  SpaceTimeField lap = hh, dt = hh;
  for (int m = 0; m < grid.nt; ++m)
    for (int k = 0; k < grid.nx; ++k) {
      const std::size_t i = std::size_t(m) * grid.nx + k;
      lap.values[i] *= grid.xi(k) * grid.xi(k);
      dt.values[i] *= grid.tau(m);
    }
  r.h_derivative_ratio = (l2_norm_spectral_xt(lap) + l2_norm_spectral_xt(dt)) / (sN * fn);

  const double inf = std::numeric_limits<double>::infinity();
  const double e = (d - 3.0) / (2.0 * (d - 1)) - 0.5;
  r.h_lx_linf_ratio = mixed_norm(sp.h, d - 1, inf, NormOrder::x_then_t) / (std::pow(N, e) * fn);
  r.h_l2x_linf_ratio = sN * mixed_norm(sp.h, 2, inf, NormOrder::x_then_t) / fn;
  r.h_linfx_l2t_ratio = N * mixed_norm(sp.h, inf, 2, NormOrder::x_then_t) / fn;
  r.h_linft_l2x_ratio = sN * mixed_norm(sp.h, inf, 2, NormOrder::t_then_x) / fn;

  double a2 = 0;
  for (int k = 0; k < grid.nx; ++k) {
    if (!symbol_support(grid.xi(k), N, c)) continue;
    for (int m = 0; m < grid.nt; ++m) a2 += std::norm(decomposition_symbol(grid.xi(k), grid.tau(m), N, c));
  }
  r.symbol_norm = sN * std::sqrt(a2 * (2 * kPi / grid.box_length) * (2 * kPi / grid.period()));

  auto leak = [&](const std::vector<double>& mass) {
    double in = 0, out = 0;
    for (int k = 0; k < grid.nx; ++k) {
      const double a = std::abs(grid.xi(k));
      (a >= N / 2 && a <= 4 * N ? in : out) += mass[k];
    }
    return in + out > 0 ? std::sqrt(out / (in + out)) : 0.0;
  };
  std::vector<double> mv(grid.nx), ml(grid.nx), mh(grid.nx, 0.0);
  const Profile v0h = fourier_x(sp.v0), lvh = fourier_x(sp.Lv0);
  for (int k = 0; k < grid.nx; ++k) {
    mv[k] = std::norm(v0h.values[k]);
    ml[k] = std::norm(lvh.values[k]);
  }
  for (int m = 0; m < grid.nt; ++m)
    for (int k = 0; k < grid.nx; ++k) mh[k] += std::norm(hh.values[std::size_t(m) * grid.nx + k]);
  r.band_leak = std::max({leak(mv), leak(ml), leak(mh)});
  return r;
}

}  // namespace gdnls
