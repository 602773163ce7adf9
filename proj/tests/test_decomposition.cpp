#include <doctest.h>

#include <cmath>

#include "gdnls/decomposition.hpp"
#include "gdnls/propagator.hpp"
#include "helpers.hpp"

using namespace gdnls;
using namespace testing_support;

namespace {

// Gaussian-windowed sum of modes with a closed-form time transform.
struct ModeSource {
  double width;
  std::vector<std::pair<double, cplx>> modes;  // (τ_q, a_q): a_q e^{iτ_q t}

  cplx operator()(double t) const {
    cplx s = 0;
    for (const auto& [tau, a] : modes) s += a * std::polar(1.0, tau * t);
    return std::exp(-0.5 * t * t / (width * width)) * s;
  }
  cplx transform(double tau) const {
    cplx s = 0;
    for (const auto& [tq, a] : modes) s += a * std::exp(-0.5 * width * width * (tau - tq) * (tau - tq));
    return width * std::sqrt(2 * kPi) * s;
  }
  CVec sample(const GridSpec& g) const {
    CVec out(g.nt);
    for (int j = 0; j < g.nt; ++j) out[j] = (*this)(g.t(j));
    return out;
  }
};

ModeSource test_source(double N) {
  return {2 / (N * N), {{-2.0 * N * N, {1.0, 0.3}}, {-6.5 * N * N, {-0.4, 0.8}}, {-11.0 * N * N, {0.2, -0.5}}}};
}

// composite Simpson on [a, b] with n (even) panels
template <class F>
cplx simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  cplx s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

Profile shifted(const Profile& p, int steps) {
  Profile out = p;
  const int n = p.nx();
  for (int m = 0; m < n; ++m) out.values[(m + steps) % n] = p.values[m];
  return out;
}

int slot_of(const GridSpec& g, double xi) {
  const int k = static_cast<int>(std::lround(xi * g.box_length / (2 * kPi)));
  return k >= 0 ? k : k + g.nx;
}

SpaceTimeField shifted(const SpaceTimeField& f, int steps) {
  SpaceTimeField out(f.grid);
  for (int j = 0; j < f.grid.nt; ++j)
    for (int m = 0; m < f.grid.nx; ++m) out.at((m + steps) % f.grid.nx, j) = f.at(m, j);
  return out;
}

}  // namespace

TEST_CASE("zero source gives zero components") {
  const GridSpec g = decomposition_grid(4, 3);
  const W0Split s = split_w0(CVec(g.nt), 4, 3, g);
  CHECK(l2_norm(s.v0) == 0);
  CHECK(l2_norm(s.Lv0) == 0);
  CHECK(l2_norm(s.h) == 0);
  CHECK(l2_norm(point_source_duhamel(CVec(g.nt), 4, g)) == 0);
}

TEST_CASE("v0 and Lv0 against closed-form and quadrature oracles") {
  const double N = 8;
  const GridSpec g = decomposition_grid(N, 3);
  const ModeSource src = test_source(N);
  const W0Split s = split_w0(src.sample(g), N, 3, g);
  const Profile v0h = fourier_x(s.v0), lvh = fourier_x(s.Lv0);
  double err = 0, scale = 0;
  for (int k = 0; k < g.nx; ++k) {
    const double xi = g.xi(k);
    const cplx expect = band_multiplier({N, BandKind::band}, xi) * src.transform(-xi * xi);
    err = std::max(err, std::abs(v0h.values[k] - expect));
    scale = std::max(scale, std::abs(expect));
  }
  MESSAGE("v0 spectrum vs closed form: " << err / scale);
  CHECK(err / scale <= 1e-8);

  // Lv0 at a handful of frequencies against Simpson quadrature of ∫_{-∞}^0
  err = scale = 0;
  for (int k : {slot_of(g, 1.2 * N), slot_of(g, 2.1 * N), slot_of(g, -3.3 * N)}) {
    const double xi = g.xi(k);
    const double p = band_multiplier({N, BandKind::band}, xi);
    if (p == 0) continue;
    const cplx q = p * simpson([&](double t) { return std::polar(1.0, t * xi * xi) * src(t); }, 12 * g.t_min, 0.0, 200000);
    err = std::max(err, std::abs(lvh.values[k] - q));
    scale = std::max(scale, std::abs(q));
  }
  REQUIRE(scale > 0);
  MESSAGE("Lv0 spectrum vs quadrature: " << err / scale);
  CHECK(err / scale <= 1e-8);
}

TEST_CASE("w0 against direct quadrature of the point-source Duhamel integral") {
  const double N = 4;
  const GridSpec g = decomposition_grid(N, 3);
  const ModeSource src = test_source(N);
  const SpaceTimeField w = point_source_duhamel(src.sample(g), N, g);
  const SpaceTimeField wh = fourier_x(w);
  double err = 0, scale = 0;
  for (int k : {slot_of(g, 1.6 * N), slot_of(g, 2.5 * N), slot_of(g, -1.9 * N)})
    for (int j : {g.nt / 2 - 40, g.nt / 2 + 7, g.nt / 2 + 100, g.nt - 1}) {
      const double xi = g.xi(k), t = g.t(j);
      const double p = band_multiplier({N, BandKind::band}, xi);
      const cplx q = p * simpson([&](double s) { return std::polar(1.0, -(t - s) * xi * xi) * src(s); }, 0.0, t, 100000);
      err = std::max(err, std::abs(wh.at(k, j) - q));
      scale = std::max(scale, std::abs(q));
    }
  REQUIRE(scale > 0);
  MESSAGE("w0 vs quadrature: " << err / scale);
  CHECK(err / scale <= 1e-8);
}

TEST_CASE("single temporal mode concentrates v0 at |xi| = 2N") {
  const double N = 8;
  const GridSpec g = decomposition_grid(N, 3);
  const ModeSource src{2 / (N * N), {{-4 * N * N, 1.0}}};
  const Profile vh = fourier_x(split_w0(src.sample(g), N, 3, g).v0);
  int best = 0;
  for (int k = 0; k < g.nx; ++k)
    if (std::abs(vh.values[k]) > std::abs(vh.values[best])) best = k;
  CHECK(std::abs(std::abs(g.xi(best)) - 2 * N) <= N / 8);
  // v̂0 is even in ξ
  for (int k = 1; k < g.nx / 2; ++k) CHECK(std::abs(vh.values[k] - vh.values[g.nx - k]) <= 1e-12 * std::abs(vh.values[best]));
}

TEST_CASE("reconstruction and normalized bounds") {
  for (double N : {4.0, 32.0}) {
    const GridSpec g = decomposition_grid(N, 3);
    const DecReport r = verify_dec(random_source(g, N, 11), N, 3, g);
    MESSAGE("N=" << N << " residual " << r.reconstruction_residual << " v0 " << r.v0_ratio << " Lv0 " << r.lv0_ratio
                 << " h " << r.h_derivative_ratio);
    CHECK(r.reconstruction_residual <= 1e-3);
    CHECK(r.v0_ratio < 1);
    CHECK(r.lv0_ratio < 1);
    CHECK(r.h_derivative_ratio < 5);
    for (double q : {r.h_lx_linf_ratio, r.h_l2x_linf_ratio, r.h_linfx_l2t_ratio, r.h_linft_l2x_ratio}) CHECK(q < 1);
  }
}

TEST_CASE("dec1 ratios are N-uniform over random sources") {
  std::vector<DecReport> reps;
  for (double N : {4.0, 8.0, 16.0, 32.0, 64.0}) {
    const GridSpec g = decomposition_grid(N, 3);
    reps.push_back(verify_dec(random_source(g, N, 100 + static_cast<std::uint64_t>(N)), N, 3, g));
  }
  auto spread = [&](auto field) {
    double lo = 1e300, hi = 0;
    for (const auto& r : reps) {
      lo = std::min(lo, r.*field);
      hi = std::max(hi, r.*field);
    }
    return hi / lo;
  };
  CHECK(spread(&DecReport::v0_ratio) <= 4);
  CHECK(spread(&DecReport::lv0_ratio) <= 4);
  CHECK(spread(&DecReport::h_derivative_ratio) <= 4);
  CHECK(spread(&DecReport::symbol_norm) <= 1 + 1e-9);
}

TEST_CASE("cutoff exponent sweep") {
  const double N = 8;
  std::vector<DecReport> reps;
  for (int c : {3, 4, 5}) {
    const GridSpec g = decomposition_grid(N, c);
    const ModeSource src = test_source(N);
    reps.push_back(verify_dec(src.sample(g), N, c, g));
    const DecReport& r = reps.back();
    MESSAGE("c=" << c << " residual " << r.reconstruction_residual << " h " << r.h_derivative_ratio << " |A| "
                 << r.symbol_norm << " leak " << r.band_leak);
    CHECK(r.reconstruction_residual <= 1e-3);
    if (c >= 4) CHECK(r.band_leak <= 1e-8);
  }
  // v0 and Lv0 do not involve c; the h constants grow like 2^{c/2}
  for (std::size_t i = 1; i < reps.size(); ++i) {
    CHECK(reps[i].v0_ratio == doctest::Approx(reps[0].v0_ratio).epsilon(1e-6));
    CHECK(reps[i].lv0_ratio == doctest::Approx(reps[0].lv0_ratio).epsilon(1e-6));
    const double step = reps[i].symbol_norm / reps[i - 1].symbol_norm;
    CHECK(step > 1);
    CHECK(step < 1.5);
  }
}

TEST_CASE("h is supported inside [N - 4M, 4N + 4M]") {
  const double N = 16;
  const int c = 3;
  const GridSpec g = decomposition_grid(N, c);
  const SpaceTimeField hh = fourier_xt(split_w0(random_source(g, N, 3), N, c, g).h);
  const double M = N / 8;
  double outside = 0, total = 0;
  for (int m = 0; m < g.nt; ++m)
    for (int k = 0; k < g.nx; ++k) {
      const double a = std::abs(g.xi(k)), e = std::norm(hh.at(k, m));
      total += e;
      if (a <= N - 4 * M || a >= 4 * N + 4 * M) outside += e;
    }
  // exact zeros before the round trip through physical space
  CHECK(std::sqrt(outside / total) <= 1e-14);
}

TEST_CASE("symbol is finite on the grid and regular across the parabola") {
  const double N = 4;
  const GridSpec g = decomposition_grid(N, 5);
  for (int k = 0; k < g.nx; ++k)
    for (int m = 0; m < g.nt; ++m) REQUIRE(std::isfinite(std::abs(decomposition_symbol(g.xi(k), g.tau(m), N, 5))));
  // bounded on both sides of τ = -ξ²
  for (double xi : {1.3 * N, 2.0 * N, -3.1 * N}) {
    const double tau = -xi * xi;
    const cplx a = decomposition_symbol(xi, tau * (1 + 1e-9), N, 5);
    const cplx b = decomposition_symbol(xi, tau * (1 - 1e-9), N, 5);
    CHECK(std::abs(a - b) <= 1e-5 * (std::abs(a) + 1e-30) + 1e-9);
    CHECK(std::abs(a) < 10 / (N * N));
  }
}

TEST_CASE("split is linear in the source") {
  const double N = 8;
  const GridSpec g = decomposition_grid(N, 3);
  const CVec F = random_source(g, N, 1), G = random_source(g, N, 2);
  const cplx a(0.7, -0.2), b(-1.3, 0.4);
  CVec H(g.nt);
  for (int j = 0; j < g.nt; ++j) H[j] = a * F[j] + b * G[j];
  const W0Split sf = split_w0(F, N, 3, g), sg = split_w0(G, N, 3, g), sh = split_w0(H, N, 3, g);
  CHECK(rel_diff(sh.v0, a * sf.v0 + b * sg.v0) <= 1e-10);
  CHECK(rel_diff(sh.Lv0, a * sf.Lv0 + b * sg.Lv0) <= 1e-10);
  CHECK(rel_diff(sh.h, a * sf.h + b * sg.h) <= 1e-10);
}

TEST_CASE("moving the anchor translates every component") {
  const double N = 8;
  const GridSpec g = decomposition_grid(N, 3);
  const CVec F = random_source(g, N, 5);
  const int steps = 37;
  const W0Split s0 = split_w0(F, N, 3, g);
  const W0Split sy = split_w0(F, N, 3, g, steps * g.dx());
  CHECK(rel_diff(sy.v0, shifted(s0.v0, steps)) <= 1e-10);
  CHECK(rel_diff(sy.Lv0, shifted(s0.Lv0, steps)) <= 1e-10);
  CHECK(rel_diff(sy.h, shifted(s0.h, steps)) <= 1e-10);
  CHECK(rel_diff(heaviside_term(sy, N, g), shifted(heaviside_term(s0, N, g), steps)) <= 1e-10);
  CHECK(rel_diff(point_source_duhamel(F, N, g, steps * g.dx()), shifted(point_source_duhamel(F, N, g), steps)) <= 1e-10);
}

TEST_CASE("decomposition errors") {
  const GridSpec g = decomposition_grid(8, 3);
  const CVec F = random_source(g, 8, 1);
  CHECK_THROWS_AS(split_w0(F, 8, 2, g), DomainError);
  CHECK_THROWS_AS(split_w0(F, 3, 3, g), BandError);
  CHECK_THROWS_AS(split_w0(F, 1024, 3, g), BandError);
  CHECK_THROWS_AS(split_w0(CVec(7), 8, 3, g), ShapeError);
  GridSpec coarse = g;
  coarse.nt = g.nt / 4;
  CHECK_THROWS_AS(split_w0(CVec(coarse.nt), 8, 3, coarse), RangeError);
}
