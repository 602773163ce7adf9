#include <doctest.h>

#include <cmath>
#include <limits>

#include "gdnls/grid.hpp"
#include "gdnls/norms.hpp"
#include "helpers.hpp"

using namespace gdnls;
using namespace testing_support;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

GridSpec small_grid() { return {16 * kPi, 256, -1.0, 1.0, 32}; }
}  // namespace

TEST_CASE("grid spec validation") {
  CHECK_NOTHROW(GridSpec{}.validate());
  CHECK_THROWS_AS((GridSpec{1.0, 100, -1, 1, 16}.validate()), ShapeError);
  CHECK_THROWS_AS((GridSpec{1.0, 64, 0.5, 1, 16}.validate()), ShapeError);
  CHECK_THROWS_AS((GridSpec{-1.0, 64, -1, 1, 16}.validate()), ShapeError);
  CHECK(GridSpec{}.zero_time_index() == 512);
  CHECK_THROWS_AS((GridSpec{1.0, 64, -1, 2, 16}.zero_time_index()), GridAlignmentError);
  GridSpec g;
  CHECK(g.tau(0) == doctest::Approx(kPi / 8));
  CHECK(g.xi(g.nx / 2) == doctest::Approx(-g.nyquist()));
}

TEST_CASE("pure mode and constant transform to single coefficients") {
  const double L = 8 * kPi;
  const int nx = 64;
  const int k0 = 5;
  const Profile h = fourier_x(plane_wave(L, nx, 2 * kPi * k0 / L));
  for (int k = 0; k < nx; ++k) {
    if (k == k0) CHECK(std::abs(h.values[k] - cplx(L)) < 1e-11);
    else CHECK(std::abs(h.values[k]) < 1e-11);
  }
  const Profile c = fourier_x(Profile(L, CVec(nx, 1.0)));
  CHECK(std::abs(c.values[0] - cplx(L)) < 1e-11);
  for (int k = 1; k < nx; ++k) CHECK(std::abs(c.values[k]) < 1e-11);
}

TEST_CASE("temporal mode transforms to a single tau coefficient") {
  const GridSpec g{2 * kPi, 8, -2.0, 2.0, 64};
  const int m0 = 60;  // negative frequency slot
  SpaceTimeField u(g);
  for (int j = 0; j < g.nt; ++j)
    for (int m = 0; m < g.nx; ++m) u.at(m, j) = std::polar(1.0, g.tau(m0) * g.t(j));
  const SpaceTimeField ut = fourier_t(u);
  for (int m = 0; m < g.nt; ++m) {
    const cplx expect = m == m0 ? cplx(g.period()) : cplx(0);
    CHECK(std::abs(ut.at(0, m) - expect) < 1e-11);
  }
}

TEST_CASE("round trips and Parseval") {
  const GridSpec g{10.0, 128, -3.0, 1.0, 64};
  const SpaceTimeField u = random_field(g, 7);
  CHECK(rel_diff(inverse_fourier_x(fourier_x(u)), u) < 1e-12);
  CHECK(rel_diff(inverse_fourier_t(fourier_t(u)), u) < 1e-12);
  const SpaceTimeField ut = fourier_xt(u);
  CHECK(rel_diff(inverse_fourier_xt(ut), u) < 1e-12);
  CHECK(std::abs(l2_norm_spectral_xt(ut) / l2_norm(u) - 1) < 1e-10);
  const Profile p = random_profile(10.0, 128, 3);
  CHECK(std::abs(l2_norm(inverse_fourier_x(fourier_x(p))) / l2_norm(p) - 1) < 1e-12);
  CHECK(std::abs(l2_norm_spectral_x(fourier_x(p)) / l2_norm(p) - 1) < 1e-10);
}

TEST_CASE("shape mismatch is reported") {
  const SpaceTimeField a(small_grid());
  GridSpec other = small_grid();
  other.nt = 64;
  const SpaceTimeField b(other);
  CHECK_THROWS_AS(a + b, ShapeError);
  CHECK_THROWS_AS(SpaceTimeField(small_grid(), CVec(3)), ShapeError);
}

TEST_CASE("psi cutoff shape") {
  CHECK(psi(0) == 1.0);
  CHECK(psi(2) == 1.0);
  CHECK(psi(-2) == 1.0);
  CHECK(psi(4) == 0.0);
  CHECK(psi(3) == doctest::Approx(0.5));
  double prev = 1.0;
  for (double x = 2; x <= 4; x += 0.01) {
    CHECK(psi(x) <= prev + 1e-15);
    prev = psi(x);
  }
  // flat contact at both ends: the ramp departs slower than any power
  CHECK(1 - psi(2.05) < 1e-8);
  CHECK(psi(3.95) < 1e-8);
}

TEST_CASE("band multipliers") {
  const double N = 4;
  for (double xi = -20; xi <= 20; xi += 0.125) {
    const double w = band_multiplier({N, BandKind::band}, xi);
    CHECK(w >= 0);
    CHECK(w <= 1);
    if (std::abs(xi) <= N || std::abs(xi) >= 4 * N) CHECK(w == 0);
  }
  CHECK(band_multiplier({N, BandKind::band}, 2 * N) == 1);
  CHECK(band_multiplier({N, BandKind::gt}, 0.5) == 0);
  CHECK(is_dyadic(0.25));
  CHECK_FALSE(is_dyadic(3));
}

TEST_CASE("partition of unity on resolved wavenumbers") {
  const double L = 16 * kPi;
  const int nx = 1024;
  const auto bands = representable_bands(L, nx);
  REQUIRE(bands.size() >= 4);
  const double n0 = bands.front(), nmax = bands.back();
  for (int k = 0; k < nx; ++k) {
    const double xi = 2 * kPi * signed_index(k, nx) / L;
    if (std::abs(xi) > 2 * nmax) continue;
    double s = band_multiplier({n0, BandKind::leq}, xi);
    for (double M : bands)
      if (M > n0) s += band_multiplier({M, BandKind::band}, xi);
    CHECK(std::abs(s - 1) < 1e-12);
  }
}

TEST_CASE("projection of pure modes and telescoping") {
  const double L = 16 * kPi;
  const int nx = 1024;
  const double N = 4;
  const Profile at2N = plane_wave(L, nx, 2 * N);
  CHECK(rel_diff(project(at2N, {N, BandKind::band}), at2N) < 1e-12);
  CHECK(l2_norm(project(plane_wave(L, nx, N / 2), {N, BandKind::band})) < 1e-12);
  CHECK_THROWS_AS(project(at2N, {64, BandKind::band}), BandError);
  CHECK_THROWS_AS(project(at2N, {3, BandKind::band}), BandError);

  const auto bands = representable_bands(L, nx);
  const Profile u = random_band_limited(L, nx, 2 * bands.back(), 11);
  Profile sum = apply_multiplier(u, [&](double xi) { return cplx(psi(2 * xi / bands.front())); });
  for (double M : bands) sum = sum + project(u, {M, BandKind::band});
  CHECK(rel_diff(sum, u) < 1e-10);
}

TEST_CASE("projection composition") {
  const double L = 16 * kPi;
  const int nx = 512;
  const Profile u = random_profile(L, nx, 5);
  const DyadicBand b{2, BandKind::band};
  const Profile twice = fourier_x(project(project(u, b), b));
  const Profile h = fourier_x(u);
  for (int k = 0; k < nx; ++k) {
    const double w = band_multiplier(b, h.xi(k));
    CHECK(std::abs(twice.values[k] - w * w * h.values[k]) < 1e-9);
  }
  // P_{<=N} is idempotent on spectra that avoid the ramp 2N < |xi| < 4N.
  const DyadicBand leq{2, BandKind::leq};
  const Profile flat = random_band_limited(L, nx, 4.0, 8);
  const Profile once = project(flat, leq);
  CHECK(rel_diff(project(once, leq), once) < 1e-12);
  const Profile once_r = project(u, leq);
  const Profile twice_r = fourier_x(project(once_r, leq));
  for (int k = 0; k < nx; ++k) {
    const double w = band_multiplier(leq, h.xi(k));
    CHECK(std::abs(twice_r.values[k] - w * w * h.values[k]) < 1e-9);
  }
}

TEST_CASE("Riesz projections") {
  const double L = 16 * kPi;
  const int nx = 256;
  const Profile w = plane_wave(L, nx, 3.0);
  CHECK(rel_diff(riesz(w, RieszSign::plus), w) < 1e-12);
  CHECK(l2_norm(riesz(w, RieszSign::minus)) < 1e-12);

  const Profile u = random_profile(L, nx, 9);
  const Profile p = riesz(u, RieszSign::plus), m = riesz(u, RieszSign::minus);
  CHECK(rel_diff(p + m, u) < 1e-14);
  const double lhs = std::pow(l2_norm(p), 2) + std::pow(l2_norm(m), 2);
  CHECK(std::abs(lhs / std::pow(l2_norm(u), 2) - 1) < 1e-12);

  // Real field with no mean and no Nyquist mode: P_- is the reflected conjugate of P_+.
  Profile real_u = random_band_limited(L, nx, 10.0, 4);
  for (auto& v : real_u.values) v = v.real();
  Profile hr = fourier_x(real_u);
  hr.values[0] = 0;
  real_u = inverse_fourier_x(hr);
  const Profile hp = fourier_x(riesz(real_u, RieszSign::plus));
  const Profile hm = fourier_x(riesz(real_u, RieszSign::minus));
  for (int k = 1; k < nx / 2; ++k) CHECK(std::abs(hm.values[nx - k] - std::conj(hp.values[k])) < 1e-10);

  const SpaceTimeField f = random_field(small_grid(), 2);
  CHECK(rel_diff(riesz(f, RieszSign::plus) + riesz(f, RieszSign::minus), f) < 1e-14);
}

TEST_CASE("Bernstein ratio") {
  const GridSpec g = small_grid();
  const double N = 2;
  SpaceTimeField mode(g);
  for (int j = 0; j < g.nt; ++j)
    for (int m = 0; m < g.nx; ++m) mode.at(m, j) = std::polar(1.0, 2 * N * g.x(m) - 3.0 * g.t(j));
  CHECK(bernstein_ratio(mode, N, 2, 2) == doctest::Approx(2).epsilon(1e-12));
  CHECK(bernstein_ratio(mode, N, kInf, kInf) == doctest::Approx(2).epsilon(1e-12));

  double worst = 0;
  for (unsigned seed = 0; seed < 100; ++seed) {
    SpaceTimeField f(g);
    for (int j = 0; j < g.nt; ++j) f.set_slice(j, random_band_limited(g.box_length, g.nx, 4 * N, seed * 100 + j));
    const double r = bernstein_ratio(f, N, 1, 2);
    worst = std::max(worst, r);
    if (seed == 0) CHECK(bernstein_ratio(cplx(-2.5, 1.0) * f, N, 1, 2) == doctest::Approx(r).epsilon(1e-12));
  }
  MESSAGE("max Bernstein ratio over 100 seeds: " << worst);
  CHECK(worst <= 8);
  CHECK_THROWS_AS(bernstein_ratio(SpaceTimeField(g), N, 2, 2), UndefinedRatio);
}
