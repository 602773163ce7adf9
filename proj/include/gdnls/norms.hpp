#pragma once

#include <string>
#include <vector>

#include "gdnls/grid.hpp"

namespace gdnls {

// x_then_t: ||u||_{L^p_x L^q_t} (time norm inside). t_then_x: ||u||_{L^p_t L^q_x}.
enum class NormOrder { x_then_t, t_then_x };

double mixed_norm(const SpaceTimeField& u, double p, double q, NormOrder order);

// Dyadic-sum Sobolev norm; the inhomogeneous form lumps P_{<=1}.
double sobolev_norm(const Profile& u, double s, bool homogeneous);
// Multiplier definition with |ξ|^s (homogeneous) or <ξ>^s; comparison oracle.
double sobolev_norm_multiplier(const Profile& u, double s, bool homogeneous);

enum class VariantTag { sec3_generic, sec4_local, sec6_global, sec7_modulation, sec8_gwp };

struct NormVariant {
  VariantTag tag = VariantTag::sec6_global;
  int d = 3;  // degree parameter, used by sec3_generic only

  static NormVariant sec3(int d) { return {VariantTag::sec3_generic, d}; }
  static NormVariant sec4() { return {VariantTag::sec4_local, 3}; }
  static NormVariant sec6() { return {VariantTag::sec6_global, 5}; }
  static NormVariant sec7() { return {VariantTag::sec7_modulation, 5}; }
  static NormVariant sec8() { return {VariantTag::sec8_gwp, 5}; }

  void validate() const;
  std::string name() const;
  // Accepts the names produced by name(), e.g. "sec4_local", "sec3_generic(5)".
  static NormVariant parse(const std::string& text);
  bool operator==(const NormVariant&) const = default;
};

// Which candidates enter the finite Y_N infimum.
struct SplitFamily {
  bool trivial = true;             // (u,0) and (0,u)
  bool thresholds = true;          // modulation cuts at dyadic Λ
  bool both_orientations = true;   // low part to either slot
};

struct YSplit {
  SpaceTimeField u1, u2;
  double value = 0;
};

double xn_norm(const SpaceTimeField& u, double N, const NormVariant& v);
double yn_norm(const SpaceTimeField& F, double N, const NormVariant& v,
               const SplitFamily& family = {});
// Minimizing split for the infimum variants (sec3, sec4, sec7).
YSplit yn_best_split(const SpaceTimeField& F, double N, const NormVariant& v,
                     const SplitFamily& family = {});

// Aggregated norms over representable bands. For sec4 this is
// ||P_{<=1}u||_{X_1} + (sum_{N>=2} N^{2s}||P_N u||^2_{X_N})^{1/2}; the other
// variants return Ẋ^0 + Ẋ^s, or Ẋ^s alone when homogeneous_only is set.
double xs_norm(const SpaceTimeField& u, double s, const NormVariant& v, bool homogeneous_only = false);
// `family` restricts the Y_N infimum of every block; a smaller family gives an
// upper bound.
double ys_norm(const SpaceTimeField& F, double s, const NormVariant& v, bool homogeneous_only = false,
               const SplitFamily& family = {});

// (sum_M (M^b ||ũ||_{L^2(A_M)})^q)^{1/q}, A_M = {M <= |τ+ξ²| < 2M}, q in {1, inf}.
double modulation_norm(const SpaceTimeField& u, double b, double q);
// Same on an already transformed field.
double modulation_norm_spectral(const SpaceTimeField& u_tilde, double b, double q);

// Exponent of the maximal-function term in the sec3 block norm.
double sec3_maximal_weight(int d);

}  // namespace gdnls
