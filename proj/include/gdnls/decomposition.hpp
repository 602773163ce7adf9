#pragma once

#include <cstdint>

#include "gdnls/grid.hpp"

namespace gdnls {

// Point-source Duhamel term w0 = ∫_0^t e^{i(t-s)Δ} P_N δ_y F0(s) ds, split as
//   w0 = -e^{itΔ} Lv0 + S + h,
//   S  = (P_{<N/2^c} 1_{x>y}) e^{itΔ} P_+ v0 + (P_{<N/2^c} 1_{x<y}) e^{itΔ} P_- v0.
// With this library's conventions (e^{itΔ} multiplies by e^{-itξ²}, time
// spectra use e^{-itτ}) the Heaviside term enters with a plus sign, and each
// Riesz half of v0 is paired with the half-line it travels into.
struct W0Split {
  Profile v0;                // v̂0(ξ) = ψ_N(ξ) F̂0(-ξ²)
  Profile Lv0;               // ψ_N(ξ) ∫_{-∞}^0 e^{isξ²} F0(s) ds
  SpaceTimeField h;          // ĥ(ξ,τ) = A(ξ,τ) F̂0(τ)
  int cutoff_exponent = 5;   // c in P_{<N/2^c}
  double anchor = 0;         // y
};

// The remainder symbol, with removable singularities on τ = -ξ² resolved by
// the half-bin τ grid. Zero outside the support of ψ_N(ξ) and its shifts.
cplx decomposition_symbol(double xi, double tau, double N, int c);

// Scale-covariant grid for band N and cutoff exponent c: the box and window
// shrink like 1/N and 1/N², and are sized so that the radiated waves stay
// clear of the box edge and h has decayed before the window ends.
GridSpec decomposition_grid(double N, int c = 5);

// Random source on the time axis of `grid`: a Gaussian envelope of width
// 2/N² around t = 0 carrying eight modes with τ ∈ -N²[1.5, 12].
CVec random_source(const GridSpec& grid, double N, std::uint64_t seed);

// F0 is sampled on grid's time axis. Throws BandError when N or N/2^c is not
// representable, RangeError when -ξ² leaves the resolved τ range on the
// support of ψ_N, DomainError for c < 3.
W0Split split_w0(const CVec& F0, double N, int c, const GridSpec& grid, double anchor = 0);

// The Heaviside term S built from a split.
SpaceTimeField heaviside_term(const W0Split& split, double N, const GridSpec& grid);

// w0 from the exact time integral of the band-limited interpolant of F0.
SpaceTimeField point_source_duhamel(const CVec& F0, double N, const GridSpec& grid, double anchor = 0);

struct DecReport {
  double reconstruction_residual = 0;  // ||w0 - (-e^{itΔ}Lv0 + S + h)|| / ||w0||
  // N^{1/2}||Lv0|| / ||F0||, N^{1/2}||v0|| / ||F0||, N^{-1/2}(||Δh|| + ||∂t h||) / ||F0||
  double lv0_ratio = 0;
  double v0_ratio = 0;
  double h_derivative_ratio = 0;
  // h bounds, each divided by its right-hand side.
  double h_lx_linf_ratio = 0;    // ||h||_{L^{d-1}_x L^∞_t} / (N^{(d-3)/(2(d-1)) - 1/2} ||F0||)
  double h_l2x_linf_ratio = 0;   // N^{1/2} ||h||_{L^2_x L^∞_t} / ||F0||
  double h_linfx_l2t_ratio = 0;  // N ||h||_{L^∞_x L^2_t} / ||F0||
  double h_linft_l2x_ratio = 0;  // N^{1/2} ||h||_{L^∞_t L^2_x} / ||F0||
  double symbol_norm = 0;        // N^{1/2} ||A||_{L^2_{ξ,τ}} on the grid
  double band_leak = 0;          // worst relative spectral mass of v0, Lv0, h outside [N/2, 4N]
};

DecReport verify_dec(const CVec& F0, double N, int c, const GridSpec& grid, int d = 3);

}  // namespace gdnls
