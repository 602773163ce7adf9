#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gdnls/estimate_lab.hpp"

namespace gdnls::lab {

// One measured (lhs, rhs) pair per requested seed, in the order given.
struct Pair {
  double lhs = 0;
  double rhs = 0;
};

// `scale` multiplies every input field; ratios must not notice it.
using Evaluator = std::vector<Pair> (*)(const EstimateCase& c, double parameter, const std::vector<int>& seeds,
                                        cplx scale);

std::vector<Pair> eval_stri1(const EstimateCase&, double, const std::vector<int>&, cplx);
std::vector<Pair> eval_stri2(const EstimateCase&, double, const std::vector<int>&, cplx);
std::vector<Pair> eval_maximal(const EstimateCase&, double, const std::vector<int>&, cplx);
std::vector<Pair> eval_kernel(const EstimateCase&, double, const std::vector<int>&, cplx);
std::vector<Pair> eval_bilinear_free(const EstimateCase&, double, const std::vector<int>&, cplx);
std::vector<Pair> eval_bilinear_xn(const EstimateCase&, double, const std::vector<int>&, cplx);
std::vector<Pair> eval_linear_main(const EstimateCase&, double, const std::vector<int>&, cplx);
std::vector<Pair> eval_multilinear(const EstimateCase&, double, const std::vector<int>&, cplx);

// Band of the maximal negative control; its sweep runs over the half-window
// length instead of N.
inline constexpr double kControlBand = 16;

// Deterministic stream for (base seed, parameter, seed index, purpose).
std::uint64_t mix_seed(std::uint64_t base, double parameter, int seed, std::uint64_t purpose = 0);

inline std::mt19937_64 rng_for(const EstimateCase& c, double parameter, int seed, std::uint64_t purpose = 0) {
  return std::mt19937_64(mix_seed(c.base_seed, parameter, seed, purpose));
}

// Power of N1 the homogeneous parts of the multilinear ratio pick up across
// the scale-covariant grids of eval_multilinear: -(d-1)(s - s0) with
// s0 = 1/2 - 1/(d-1). Zero at the critical regularity.
inline double multilinear_scaling(const EstimateCase& c) {
  return -(c.d - 1) * (c.s - (0.5 - 1.0 / (c.d - 1)));
}

// Spectrum of a band-N packet concentrated at x = 0 at t = 0, with a 25% iid
// perturbation per mode, L²-normalised to |scale|. Focusing data of this kind
// saturate the maximal and Strichartz bounds; iid band data spread over the
// whole box do not.
Profile focusing_packet(double N, std::mt19937_64& rng, cplx scale, double L, int nx);

// Share of the space-time L² mass of u at |τ + ξ²| < threshold.
double low_modulation_fraction(const SpaceTimeField& u, double threshold);

int next_pow2(double v, int floor = 8);

// Spectral resampling of the spatial axis; throws ResampleError when the
// dropped modes carry more than 1e-12 of the relative mass.
SpaceTimeField resample_x(const SpaceTimeField& u, int nx);
// Keeps every k-th time sample (the window is unchanged, t = 0 must survive).
SpaceTimeField decimate_t(const SpaceTimeField& u, int k);

}  // namespace gdnls::lab
