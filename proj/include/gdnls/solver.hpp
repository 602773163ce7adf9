#pragma once

#include <optional>
#include <vector>

#include "gdnls/grid.hpp"
#include "gdnls/nonlinearity.hpp"
#include "gdnls/norms.hpp"

namespace gdnls {

struct PicardTrace {
  std::vector<SpaceTimeField> iterates;  // u^(0) = e^{itΔ}u0, u^(1), ...
  std::vector<double> diffs;             // xs_norm(u^(k+1) - u^(k))
  std::vector<double> ratios;            // diffs[k+1] / diffs[k]
  bool diverged = false;                 // growth > 10x on two consecutive steps
  // ||u^K - L u^K|| for the last iterate, measured with one extra map application.
  double fixed_point_residual = 0;
  // q/(1-q) * last diff with q the last ratio: a posteriori distance to the fixed point.
  double a_posteriori_error = 0;
};

struct PicardOptions {
  bool keep_iterates = true;  // otherwise only the last iterate is kept
};

// L u = e^{itΔ}u0 - i ∫_0^t e^{i(t-s)Δ} P(u(s)) ds.
SpaceTimeField picard_map(const SpaceTimeField& free_part, const PolynomialSpec& P, const SpaceTimeField& u);

PicardTrace picard_iterate(const Profile& u0, const PolynomialSpec& P, double s, const NormVariant& v, int k_max,
                           const GridSpec& grid, const PicardOptions& opts = {});

struct MeasuredConstants {
  double c1 = 0;  // linear estimate constant
  double c2 = 0;  // multilinear estimate constant
};

// Data-size threshold min{(8 c1 c2)^{-1/(d-1)}, (4 c2)^{-1/(d-1)}} from measured
// constants: an empirical surrogate for the analytic constant.
double contraction_constant(const PolynomialSpec& P, const std::optional<MeasuredConstants>& c);
double contraction_constant(int d, double c1, double c2);

struct ReferenceOptions {
  bool check_halving = true;
  double halving_tol = 1e-6;
};

// Integrating-factor RK4 in the interaction picture, run outward from t=0 in
// both directions; `dt` is refined so that it divides the grid step.
SpaceTimeField reference_solve(const Profile& u0, const PolynomialSpec& P, const GridSpec& grid, double dt,
                               const ReferenceOptions& opts = {});

// ||(i∂t+Δ)u - P(u)|| / ||u||.
double equation_residual(const SpaceTimeField& u, const PolynomialSpec& P);

}  // namespace gdnls
