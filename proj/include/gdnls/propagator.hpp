#pragma once

#include <vector>

#include "gdnls/grid.hpp"

namespace gdnls {

// e^{itΔ}u0 sampled on every grid time.
SpaceTimeField free_evolve(const Profile& u0, const GridSpec& grid);
// e^{itΔ}u0 at a single time.
Profile free_slice(const Profile& u0, double t);

// w(t) = -i ∫_0^t e^{i(t-s)Δ} F(s) ds, trapezoid rule on grid times in the
// interaction picture. t = 0 must be a grid time.
SpaceTimeField duhamel(const SpaceTimeField& F);

// (i∂t + Δ)u. The x part is spectral; the t derivative is a second-order
// difference of e^{-itΔ}u, so free waves are annihilated exactly and
// non-periodic time windows cause no Gibbs ringing.
SpaceTimeField schrodinger_operator(const SpaceTimeField& u);

enum class KernelKind { K1_truncated, K2_untruncated, K0_fundamental };

struct KernelSample {
  SpaceTimeField values;
  double N = 1;
  KernelKind kind = KernelKind::K2_untruncated;
};

// K(x,t) = ∫ e^{ixξ - itξ²} ψ(ξ/4N) dξ on the grid; K1 carries the exact
// indicator of |t| <= 2, K0 drops the cutoff (all grid modes).
KernelSample kernel(double N, KernelKind kind, const GridSpec& grid);

// Exponent s0 with ||e^{itΔ}P_N f||_{L^γ_x L^∞_t} <~ N^{s0} ||f||_2:
// 1/γ for γ in {2,3}, (γ-2)/(2γ) for γ >= 4.
double maximal_exponent(double gamma);

// ||K||_{L^{γ/2}_x L^∞_t} / N^{2 s0}. The evaluation grid and time set are
// chosen internally (see kernel_eval_grid); sup over t uses a geometric time
// set refined near t = 0 plus the reflection |K(x,-t)| = |K(-x,t)|.
double kernel_bound(double N, KernelKind kind, double gamma);
// Unnormalized ||K||_{L^{γ/2}_x L^∞_t} on the internal grid.
double kernel_norm(double N, KernelKind kind, double gamma);

struct KernelGrid {
  double box_length;
  int nx;
  std::vector<double> times;  // non-negative sample times, ascending
};
KernelGrid kernel_eval_grid(double N, KernelKind kind);

// Geometric times t_lo * r^k up to t_hi (inclusive endpoint) with the given
// number of points per octave, preceded by 0.
std::vector<double> geometric_times(double t_lo, double t_hi, int per_octave);

// Pointwise sup_t |e^{itΔ}u0| over the given times, from the spectrum of u0.
std::vector<double> sup_over_times(const Profile& u0_hat, const std::vector<double>& times);

}  // namespace gdnls
