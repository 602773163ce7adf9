#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdnls/grid.hpp"
#include "gdnls/norms.hpp"

namespace gdnls {

// Unit-L² profile with iid standard complex Gaussian coefficients on
// N < |ξ| < 4N (the open support of the band multiplier), zero elsewhere.
Profile random_band_data(double N, std::uint64_t seed, double box_length = 64 * kPi, int nx = 2048);

struct ScalingFit {
  std::vector<std::pair<double, double>> pairs;  // (parameter, value)
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;  // largest |log2 value - fitted line|
};

// Least squares on (log2 parameter, log2 value). FitError below 4 points or
// for non-positive entries.
ScalingFit fit_loglog(const std::vector<std::pair<double, double>>& pairs);

enum class CaseFamily { stri1, stri2, maximal, kernel, bilinear_free, bilinear_xn, linear_main, multilinear };

std::string family_name(CaseFamily f);
CaseFamily parse_family(const std::string& name);
std::vector<CaseFamily> all_families();

// One estimate, its sweep and its seeds. Text form: family(key=value,...)
// with every key spelled out; parse(id()) reproduces the case.
struct EstimateCase {
  CaseFamily family = CaseFamily::maximal;
  // stri1 exponents, L^q_t L^p_x
  double q = 6, p = 6;
  // maximal and kernel
  double gamma = 4;
  bool cutoff = true;  // t in [-1,1] for maximal with gamma < 4
  // bilinear_free: "alpha" | "lambda"; bilinear_xn: "bi2" | "bi25"; linear_main: "main" | "main1"
  std::string form;
  // linear_main and multilinear
  NormVariant variant = NormVariant::sec4();
  int d = 3;
  std::string pattern;        // one sign per factor, '+' for u and '-' for ubar
  double s = 0.5, r = 0.5;
  std::string pool = "mixed";  // free | picard | decomposition | mixed (multilinear default: free)
  std::string regime = "hl";   // multilinear: hl (high x low -> high) | hh (high x high -> low)

  std::vector<double> sweep;
  int seeds = 4;
  std::uint64_t base_seed = 1;

  std::string id() const;
  static EstimateCase parse(const std::string& text);
  // Default sweep and seed count for the family with these parameters.
  static EstimateCase defaults(CaseFamily f);
  void validate() const;
  bool operator==(const EstimateCase&) const = default;
};

struct Sample {
  double parameter = 0;
  int seed = 0;
  double ratio = 0;
  double lhs = 0;
  double rhs = 0;
};

struct CaseResult {
  EstimateCase estimate;
  std::vector<Sample> samples;
  std::optional<ScalingFit> fit;   // per-parameter maximum ratio
  double claimed_exponent = 0;     // power of the sweep parameter on the right-hand side
  double measured_exponent = 0;    // fit slope + claimed exponent
  double tolerance = 0.05;
  double max_ratio = 0;            // empirical constant of the estimate
  double max_over_median = 0;      // over all samples
  bool slope_contracted = true;    // false where no exponent is asserted
  bool contracted = true;          // negative controls carry no contract
  bool scale_invariant = true;     // ratio unchanged under u -> cu for one random c
  bool passed = false;
  std::string anchor;              // statement the case measures
  std::string note;
};

// Runs every (parameter, seed) job, reduces in (parameter, seed) order, fits
// the per-parameter maxima and applies the contract. `jobs` > 1 runs
// parameters concurrently.
CaseResult measure(const EstimateCase& c, int jobs = 1);

// Measures a single (parameter, seed) sample.
Sample measure_sample(const EstimateCase& c, double parameter, int seed);

// Named reference of an estimate case (a theorem or display label).
std::string describe_case(const std::string& family_or_id);
std::vector<std::string> list_cases();

struct ModulationReport {
  double N1 = 0;
  std::string pattern;        // "i" .. "iv" or "control"
  double low_mass_fraction = 0;
  double output_mass = 0;
  bool contracted = true;
  bool passed = false;
};

// Five free-wave inputs, four at |ξ| ≈ N1 with modulation |τ ± N1²| ≤ N1²/32
// and one at N1/16, combined as one of the four P± product cases
// ("i".."iv"), or without sign restriction ("control"). Reports the share of
// output L² mass at |τ + ξ²| < N1²/64. N1 must be dyadic and at least 16.
ModulationReport modulation_threshold_check(double N1, const std::string& pattern, double amplitude = 1);

}  // namespace gdnls
