#include <doctest.h>

#include <cmath>
#include <limits>

#include "gdnls/norms.hpp"
#include "gdnls/propagator.hpp"
#include "helpers.hpp"

using namespace gdnls;
using namespace testing_support;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const GridSpec kGrid{16 * kPi, 256, -1.0, 1.0, 64};

SpaceTimeField band_wave(double N, unsigned seed) {
  const Profile g = project(random_band_limited(kGrid.box_length, kGrid.nx, 4 * N, seed), {N, BandKind::band});
  return free_evolve(g, kGrid);
}

// A band-N field with nonzero forcing: free wave plus a Duhamel term.
SpaceTimeField forced_wave(double N, unsigned seed) {
  const SpaceTimeField a = band_wave(N, seed);
  SpaceTimeField F = band_wave(N, seed + 1000);
  for (int j = 0; j < kGrid.nt; ++j)
    for (int m = 0; m < kGrid.nx; ++m) F.at(m, j) *= std::cos(3 * kGrid.t(j));
  return a + duhamel(F);
}

// Plane waves at xi = +-2N only: a field living in exactly one dyadic band.
SpaceTimeField single_band(double N) {
  Profile p(kGrid.box_length, kGrid.nx);
  for (int m = 0; m < kGrid.nx; ++m) p.values[m] = std::polar(1.0, 2 * N * p.x(m)) + 0.5 * std::polar(1.0, -2 * N * p.x(m));
  return free_evolve(p, kGrid);
}

}  // namespace

TEST_CASE("mixed norms of the constant field") {
  const SpaceTimeField one(kGrid, CVec(kGrid.size(), 1.0));
  const double L = kGrid.box_length;
  CHECK(mixed_norm(one, 2, 2, NormOrder::x_then_t) == doctest::Approx(std::sqrt(2 * L)).epsilon(1e-12));
  CHECK(mixed_norm(one, kInf, 2, NormOrder::x_then_t) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(mixed_norm(one, 1, kInf, NormOrder::x_then_t) == doctest::Approx(L).epsilon(1e-12));
  CHECK_THROWS_AS(mixed_norm(one, 0.5, 2, NormOrder::x_then_t), DomainError);
}

TEST_CASE("mixed norm Fubini and axioms") {
  const SpaceTimeField a = random_field(kGrid, 1), b = random_field(kGrid, 2);
  const double x2 = mixed_norm(a, 2, 2, NormOrder::x_then_t), t2 = mixed_norm(a, 2, 2, NormOrder::t_then_x);
  CHECK(std::abs(x2 - t2) / x2 < 1e-12);
  CHECK(std::abs(mixed_norm(a, 3, 3, NormOrder::x_then_t) / mixed_norm(a, 3, 3, NormOrder::t_then_x) - 1) < 1e-12);
  for (double p : {1.0, 2.0, 4.0, kInf})
    for (double q : {1.0, 2.0, 6.0, kInf})
      for (auto o : {NormOrder::x_then_t, NormOrder::t_then_x}) {
        const double na = mixed_norm(a, p, q, o), nb = mixed_norm(b, p, q, o);
        CHECK(mixed_norm(a + b, p, q, o) <= na + nb + 1e-10);
        CHECK(std::abs(mixed_norm(cplx(0, -3) * a, p, q, o) - 3 * na) <= 1e-10 * na);
      }
}

TEST_CASE("Sobolev norms") {
  const double L = kGrid.box_length;
  const int nx = kGrid.nx;
  for (double N : {0.5, 1.0, 2.0}) {
    const Profile mode = plane_wave(L, nx, 2 * N);
    for (double s : {-0.5, 0.25, 1.0}) {
      const double dyadic = sobolev_norm(mode, s, true);
      CHECK(dyadic == doctest::Approx(std::pow(N, s) * l2_norm(mode)).epsilon(1e-12));
      const double ratio = dyadic / sobolev_norm_multiplier(mode, s, true);
      CHECK(ratio >= std::pow(2.0, -std::abs(s)) - 1e-12);
      CHECK(ratio <= std::pow(2.0, std::abs(s)) + 1e-12);
    }
  }
  CHECK(sobolev_norm(Profile(L, nx), 0.5, true) == 0);
  CHECK(sobolev_norm(Profile(L, nx), 0.5, false) == 0);

  // s = 0: the l^2 sum of smooth Littlewood-Paley pieces equals ||u|| exactly
  // where only one psi_N is active (xi = 2^k), and lies in [||u||/sqrt2, ||u||]
  // in general since psi_N^2 + psi_{N/2}^2 ranges over [1/2, 1].
  Profile dyadic_modes(L, nx);
  for (double xi : {0.25, 0.5, 2.0, 4.0, -1.0})
    dyadic_modes = dyadic_modes + plane_wave(L, nx, xi);
  CHECK(std::abs(sobolev_norm(dyadic_modes, 0, true) / l2_norm(dyadic_modes) - 1) < 1e-10);
  for (unsigned seed = 0; seed < 10; ++seed) {
    Profile u = project(random_band_limited(L, nx, 7.5, seed), {0.125, BandKind::gt});
    const double r = sobolev_norm(u, 0, true) / l2_norm(u);
    CHECK(r <= 1 + 1e-12);
    CHECK(r >= 1 / std::sqrt(2.0) - 1e-12);
  }
}

TEST_CASE("block norm of free waves drops the forcing term") {
  const double N = 2;
  const SpaceTimeField u = band_wave(N, 4);
  const double sN = std::sqrt(N);
  const double expect = mixed_norm(u, kInf, 2, NormOrder::t_then_x) +
                        std::pow(N, -0.25) * mixed_norm(u, 4, kInf, NormOrder::x_then_t) +
                        sN * mixed_norm(u, kInf, 2, NormOrder::x_then_t);
  const double got = xn_norm(u, N, NormVariant::sec6());
  CHECK(std::isfinite(got));
  CHECK(std::abs(got - expect) <= 1e-9 * expect);
  const double sec7 = xn_norm(u, N, NormVariant::sec7());
  CHECK(std::abs(sec7 - l2_norm(u.slice_profile(kGrid.zero_time_index()))) <= 1e-9 * sec7);
  CHECK(std::isfinite(xn_norm(u, N, NormVariant::sec4())));
  CHECK(std::isfinite(xn_norm(u, N, NormVariant::sec3(5))));
  CHECK_THROWS_AS(xn_norm(u, 8, NormVariant::sec6()), BandError);
  CHECK_THROWS_AS(NormVariant::sec3(2).validate(), DomainError);
}

TEST_CASE("Y_N infimum is below every split") {
  const double N = 2;
  const SpaceTimeField F = forced_wave(N, 5);
  for (auto v : {NormVariant::sec3(3), NormVariant::sec4()}) {
    const double y = yn_norm(F, N, v);
    CHECK(y <= mixed_norm(F, 1, 2, NormOrder::t_then_x) + 1e-12);
    CHECK(y <= mixed_norm(F, 1, 2, NormOrder::x_then_t) / std::sqrt(N) + 1e-12);
    const YSplit best = yn_best_split(F, N, v);
    CHECK(l2_norm(best.u1 + best.u2 - F) / l2_norm(F) < 1e-10);
    CHECK(best.value == doctest::Approx(y).epsilon(1e-14));
    const double trivial = yn_norm(F, N, v, SplitFamily{true, false, false});
    const double one_way = yn_norm(F, N, v, SplitFamily{true, true, false});
    CHECK(one_way <= trivial);
    CHECK(y <= one_way);
  }
  const double y7 = yn_norm(F, N, NormVariant::sec7());
  CHECK(y7 <= modulation_norm(F, -0.5, 1) + 1e-12);
  CHECK(y7 <= mixed_norm(F, 1, 2, NormOrder::x_then_t) / std::sqrt(N) + 1e-12);
}

TEST_CASE("modulation norm shells") {
  const GridSpec g{16 * kPi, 128, -2.0, 2.0, 64};
  SpaceTimeField u(g);
  const int k0 = 9, m0 = 40;
  for (int j = 0; j < g.nt; ++j)
    for (int m = 0; m < g.nx; ++m) u.at(m, j) = std::polar(1.0, g.xi(k0) * g.x(m) + g.tau(m0) * g.t(j));
  const double mod = std::abs(g.tau(m0) + g.xi(k0) * g.xi(k0));
  const double M = std::exp2(std::floor(std::log2(mod)));
  for (double b : {-0.5, 0.5})
    for (double q : {1.0, kInf}) CHECK(modulation_norm(u, b, q) == doctest::Approx(std::pow(M, b) * l2_norm(u)).epsilon(1e-10));
  const SpaceTimeField r = random_field(g, 3);
  CHECK(modulation_norm(r, 0, kInf) <= l2_norm(r) * (1 + 1e-12));
  CHECK_THROWS_AS(modulation_norm(r, 0.5, 2), DomainError);
  const SpaceTimeField r2 = random_field(g, 4);
  CHECK(modulation_norm(r + r2, 0.5, 1) <= modulation_norm(r, 0.5, 1) + modulation_norm(r2, 0.5, 1) + 1e-10);
}

TEST_CASE("modulation norm of a bumped free wave") {
  const GridSpec g{32 * kPi, 256, -4.0, 4.0, 256};
  const double s = 0.5;
  const Profile g0 = random_band_limited(g.box_length, g.nx, 4, 7);
  SpaceTimeField u = free_evolve(g0, g);
  for (int j = 0; j < g.nt; ++j) {
    const double b = std::exp(-0.5 * std::pow(g.t(j) / s, 2));
    for (int m = 0; m < g.nx; ++m) u.at(m, j) *= b;
  }
  // |bump^(sigma)|^2 = 2 pi s^2 exp(-s^2 sigma^2); integrate over each shell.
  double predicted = 0;
  for (int e = -6; e < 8; ++e) {
    const double M = std::exp2(e);
    double mass = 0;
    const int steps = 2000;
    for (int i = 0; i < steps; ++i) {
      const double sigma = M + (i + 0.5) * M / steps;
      mass += 2 * 2 * kPi * s * s * std::exp(-s * s * sigma * sigma) * M / steps;
    }
    predicted = std::max(predicted, std::sqrt(M) * l2_norm(g0) * std::sqrt(mass / (2 * kPi)));
  }
  const double got = modulation_norm(u, 0.5, kInf);
  MESSAGE("bumped wave X^{0,1/2,inf}: " << got << " predicted " << predicted);
  CHECK(got <= 4 * predicted);
  CHECK(got >= predicted / 4);
}

TEST_CASE("aggregated norms") {
  const SpaceTimeField zero(kGrid);
  CHECK(xs_norm(zero, 0.5, NormVariant::sec6()) == 0);
  CHECK(ys_norm(zero, 0.5, NormVariant::sec4()) == 0);

  const double N0 = 1;
  const SpaceTimeField one = single_band(N0 * 2);
  const double xn = xn_norm(one, 2 * N0, NormVariant::sec6());
  CHECK(std::abs(xs_norm(one, 0, NormVariant::sec6(), true) - xn) <= 1e-10 * xn);
  const double s = 0.75;
  CHECK(std::abs(xs_norm(one, s, NormVariant::sec6(), true) - std::pow(2 * N0, s) * xn) <= 1e-10 * xn);
  CHECK(std::abs(xs_norm(one, s, NormVariant::sec6()) - (1 + std::pow(2 * N0, s)) * xn) <= 1e-10 * xn);

  // re-summation oracle on a multi-band field
  SpaceTimeField multi = band_wave(0.5, 1) + band_wave(1, 2) + forced_wave(2, 3);
  for (auto v : {NormVariant::sec6(), NormVariant::sec8(), NormVariant::sec7()}) {
    double acc = 0;
    for (double N : representable_bands(kGrid.box_length, kGrid.nx)) {
      const double b = xn_norm(project(multi, {N, BandKind::band}), N, v);
      acc += std::pow(N, 2 * s) * b * b;
    }
    const double got = xs_norm(multi, s, v, true);
    CHECK(std::abs(got * got - acc) <= 1e-8 * acc);
  }
  double acc4 = 0;
  for (double N : representable_bands(kGrid.box_length, kGrid.nx))
    if (N >= 2) acc4 += std::pow(N, 2 * s) * std::pow(xn_norm(project(multi, {N, BandKind::band}), N, NormVariant::sec4()), 2);
  const double low = xn_norm(project(multi, {1, BandKind::leq}), 1, NormVariant::sec4());
  CHECK(xs_norm(multi, s, NormVariant::sec4()) == doctest::Approx(low + std::sqrt(acc4)).epsilon(1e-10));
}

TEST_CASE("block norm axioms on random pairs") {
  const double N = 2;
  const SpaceTimeField a = forced_wave(N, 11), b = forced_wave(N, 21);
  const cplx c(1.5, -2.0);
  for (auto v : {NormVariant::sec3(3), NormVariant::sec4(), NormVariant::sec6(), NormVariant::sec7(), NormVariant::sec8()}) {
    const double na = xn_norm(a, N, v), nb = xn_norm(b, N, v);
    CHECK(std::abs(xn_norm(c * a, N, v) - std::abs(c) * na) <= 1e-10 * na);
    CHECK(xn_norm(a + b, N, v) <= na + nb + 1e-10);
    const double ya = yn_norm(a, N, v), yb = yn_norm(b, N, v);
    CHECK(std::abs(yn_norm(c * a, N, v) - std::abs(c) * ya) <= 1e-10 * ya);
    CHECK(yn_norm(a + b, N, v) <= ya + yb + 1e-10);
  }
}
