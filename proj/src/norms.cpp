#include "gdnls/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <regex>

#include "gdnls/propagator.hpp"

namespace gdnls {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double powq(double a, double q) {
  if (q == 2) return a * a;
  if (q == 1) return a;
  return std::pow(a, q);
}

inline double root(double acc, double q) {
  if (q == 2) return std::sqrt(acc);
  if (q == 1) return acc;
  return std::pow(acc, 1.0 / q);
}

void check_exponent(double p) {
  if (!(p >= 1)) throw DomainError("Lebesgue exponents must lie in [1, inf]");
}

// |τ_m + ξ_k²| laid out like a spectral field.
std::vector<double> modulation_grid(const GridSpec& g) {
  std::vector<double> mu(g.size());
  for (int m = 0; m < g.nt; ++m) {
    const double tau = g.tau(m);
    double* row = mu.data() + std::size_t(m) * g.nx;
    for (int k = 0; k < g.nx; ++k) row[k] = std::abs(tau + g.xi(k) * g.xi(k));
  }
  return mu;
}

inline int shell_of(double mu) { return static_cast<int>(std::floor(std::log2(mu))); }

double l1x_l2t(const SpaceTimeField& f) { return mixed_norm(f, 1, 2, NormOrder::x_then_t); }

bool is_infimum_variant(const NormVariant& v) {
  return v.tag == VariantTag::sec3_generic || v.tag == VariantTag::sec4_local ||
         v.tag == VariantTag::sec7_modulation;
}

// Σ_outer (Σ_inner |f|² w_inner)^{1/2} w_outer over a time-major array.
double l1_l2(const SpaceTimeField& f, bool x_outer, double w_inner, double w_outer) {
  const GridSpec& g = f.grid;
  std::vector<double> acc(x_outer ? g.nx : g.nt, 0.0);
  for (int j = 0; j < g.nt; ++j) {
    const cplx* row = f.slice(j);
    if (x_outer) {
      for (int m = 0; m < g.nx; ++m) acc[m] += std::norm(row[m]);
    } else {
      double r = 0;
      for (int m = 0; m < g.nx; ++m) r += std::norm(row[m]);
      acc[j] = r;
    }
  }
  double total = 0;
  for (double a : acc) total += std::sqrt(a * w_inner);
  return total * w_outer;
}

// Minimum over the split family. Slot one is always N^{-1/2} L^1_x L^2_t;
// slot two is L^1_t L^2_x (sec3, sec4) or Ẋ^{0,-1/2,1} (sec7).
// Each candidate is scored from partial transforms: by Parseval in t,
// L^1_x L^2_t only needs the spectrum brought back in x, and L^1_t L^2_x
// only needs it brought back in t. The winning pair is rebuilt at the end.
double y_infimum(const SpaceTimeField& F, double N, const NormVariant& v, const SplitFamily& fam,
                 YSplit* best) {
  if (!fam.trivial && !fam.thresholds) throw DomainError("empty split family");
  const GridSpec& g = F.grid;
  const bool modulation_slot = v.tag == VariantTag::sec7_modulation;
  const double wN = 1 / std::sqrt(N);
  const SpaceTimeField Ft = fourier_xt(F);
  const SpaceTimeField Fx_back = fourier_t(F);  // x physical, t spectral
  const SpaceTimeField Ft_back = fourier_x(F);  // x spectral, t physical

  // from x-physical / t-spectral data
  auto slot_one = [&](const SpaceTimeField& xt) { return wN * l1_l2(xt, true, 1 / g.period(), g.dx()); };
  // from x-spectral / t-physical data, or from the full spectrum
  auto slot_two = [&](const SpaceTimeField& tx, const SpaceTimeField& full) {
    return modulation_slot ? modulation_norm_spectral(full, -0.5, 1) : l1_l2(tx, false, 1 / g.box_length, g.dt());
  };

  // threshold 0 stands for the trivial splits
  double best_value = kInf, best_lambda = 0;
  bool best_low_first = true;
  auto consider = [&](double value, double lambda, bool low_first) {
    if (value < best_value) {
      best_value = value;
      best_lambda = lambda;
      best_low_first = low_first;
    }
  };

  if (fam.trivial) {
    consider(slot_one(Fx_back), kInf, true);
    consider(slot_two(Ft_back, Ft), 0, true);
  }
  const auto mu = modulation_grid(g);
  if (fam.thresholds) {
    std::vector<int> shells;
    for (double m : mu) shells.push_back(shell_of(m));
    std::sort(shells.begin(), shells.end());
    shells.erase(std::unique(shells.begin(), shells.end()), shells.end());
    for (std::size_t i = 1; i < shells.size(); ++i) {
      const double lambda = std::exp2(shells[i]);
      SpaceTimeField lowT = Ft;
      for (std::size_t n = 0; n < mu.size(); ++n)
        if (!(mu[n] < lambda)) lowT.values[n] = 0;
      const SpaceTimeField highT = Ft - lowT;
      SpaceTimeField low_x = lowT;
      inverse_fourier_x_inplace(low_x);
      SpaceTimeField high_t = highT;
      inverse_fourier_t_inplace(high_t);
      consider(slot_one(low_x) + slot_two(high_t, highT), lambda, true);
      if (fam.both_orientations) {
        const SpaceTimeField high_x = Fx_back - low_x;
        const SpaceTimeField low_t = Ft_back - high_t;
        consider(slot_one(high_x) + slot_two(low_t, lowT), lambda, false);
      }
    }
  }
  if (best) {
    SpaceTimeField lowT = Ft;
    for (std::size_t n = 0; n < mu.size(); ++n)
      if (!(mu[n] < best_lambda)) lowT.values[n] = 0;
    SpaceTimeField low = best_lambda == kInf ? F : inverse_fourier_xt(lowT);
    SpaceTimeField high = F - low;
    best->u1 = best_low_first ? std::move(low) : std::move(high);
    best->u2 = F - best->u1;
    best->value = best_value;
  }
  return best_value;
}

SpaceTimeField block(const SpaceTimeField& u, double N, BandKind kind) {
  return project(u, {N, kind});
}

}  // namespace

double mixed_norm(const SpaceTimeField& u, double p, double q, NormOrder order) {
  check_exponent(p);
  check_exponent(q);
  const GridSpec& g = u.grid;
  const bool x_outer = order == NormOrder::x_then_t;
  const int n_outer = x_outer ? g.nx : g.nt;
  const double w_inner = x_outer ? g.dt() : g.dx();
  const double w_outer = x_outer ? g.dx() : g.dt();
  std::vector<double> acc(n_outer, 0.0);
  for (int j = 0; j < g.nt; ++j) {
    const cplx* row = u.slice(j);
    for (int m = 0; m < g.nx; ++m) {
      const double a2 = std::norm(row[m]);  // avoids hypot in the hot loop
      double& slot = acc[x_outer ? m : j];
      if (q == 2) {
        slot += a2;
        continue;
      }
      const double a = std::sqrt(a2);
      if (std::isinf(q)) slot = std::max(slot, a);
      else slot += powq(a, q);
    }
  }
  double total = 0;
  for (double a : acc) {
    const double inner = std::isinf(q) ? a : root(a * w_inner, q);
    if (std::isinf(p)) total = std::max(total, inner);
    else total += powq(inner, p);
  }
  return std::isinf(p) ? total : root(total * w_outer, p);
}

double sobolev_norm(const Profile& u, double s, bool homogeneous) {
  const Profile h = fourier_x(u);
  auto band_mass = [&](const DyadicBand& b) {
    double acc = 0;
    for (int k = 0; k < h.nx(); ++k) {
      const double w = band_multiplier(b, h.xi(k));
      acc += w * w * std::norm(h.values[k]);
    }
    return acc / h.box_length;
  };
  double total = 0;
  if (homogeneous) {
    for (double N : representable_bands(u.box_length, u.nx()))
      total += std::pow(N, 2 * s) * band_mass({N, BandKind::band});
  } else {
    total += band_mass({1.0, BandKind::leq});
    for (double N : representable_bands(u.box_length, u.nx()))
      if (N >= 2) total += std::pow(N, 2 * s) * band_mass({N, BandKind::band});
  }
  return std::sqrt(total);
}

double sobolev_norm_multiplier(const Profile& u, double s, bool homogeneous) {
  const Profile h = fourier_x(u);
  double acc = 0;
  for (int k = 0; k < h.nx(); ++k) {
    const double xi = std::abs(h.xi(k));
    if (homogeneous && xi == 0) continue;
    const double w = homogeneous ? std::pow(xi, 2 * s) : std::pow(1 + xi * xi, s);
    acc += w * std::norm(h.values[k]);
  }
  return std::sqrt(acc / h.box_length);
}

void NormVariant::validate() const {
  if (tag == VariantTag::sec3_generic && d < 3) throw DomainError("sec3_generic needs d >= 3");
}

std::string NormVariant::name() const {
  switch (tag) {
    case VariantTag::sec3_generic: return "sec3_generic(" + std::to_string(d) + ")";
    case VariantTag::sec4_local: return "sec4_local";
    case VariantTag::sec6_global: return "sec6_global";
    case VariantTag::sec7_modulation: return "sec7_modulation";
    case VariantTag::sec8_gwp: return "sec8_gwp";
  }
  return "?";
}

NormVariant NormVariant::parse(const std::string& text) {
  static const std::regex generic(R"(sec3_generic\((\d+)\))");
  std::smatch m;
  if (std::regex_match(text, m, generic)) {
    NormVariant v = sec3(std::stoi(m[1]));
    v.validate();
    return v;
  }
  if (text == "sec4_local") return sec4();
  if (text == "sec6_global") return sec6();
  if (text == "sec7_modulation") return sec7();
  if (text == "sec8_gwp") return sec8();
  throw DomainError("unknown norm variant '" + text + "'");
}

double sec3_maximal_weight(int d) { return maximal_exponent(d - 1); }

double yn_norm(const SpaceTimeField& F, double N, const NormVariant& v, const SplitFamily& family) {
  v.validate();
  require_representable(N, F.grid.box_length, F.grid.nx);
  if (is_infimum_variant(v)) return y_infimum(F, N, v, family, nullptr);
  return l1x_l2t(F) / std::sqrt(N);
}

YSplit yn_best_split(const SpaceTimeField& F, double N, const NormVariant& v, const SplitFamily& family) {
  v.validate();
  require_representable(N, F.grid.box_length, F.grid.nx);
  if (!is_infimum_variant(v)) throw DomainError("variant " + v.name() + " has no split infimum");
  YSplit best;
  y_infimum(F, N, v, family, &best);
  return best;
}

namespace {

// Y_N part of a block norm. When (i∂t+Δ)u is rounding noise (a free wave) the
// trivial splits already put it below 1e-9 of the other terms, and the
// threshold scan is skipped.
double forcing_part(const SpaceTimeField& u, double N, const NormVariant& v) {
  const SpaceTimeField D = schrodinger_operator(u);
  if (is_infimum_variant(v) && l2_norm(D) <= 1e-11 * (1 + N * N) * l2_norm(u))
    return yn_norm(D, N, v, SplitFamily{true, false, false});
  return yn_norm(D, N, v);
}

}  // namespace

double xn_norm(const SpaceTimeField& u, double N, const NormVariant& v) {
  v.validate();
  require_representable(N, u.grid.box_length, u.grid.nx);
  const double sN = std::sqrt(N);
  const auto& X = NormOrder::x_then_t;
  const auto& T = NormOrder::t_then_x;
  switch (v.tag) {
    case VariantTag::sec3_generic: {
      const double w = sec3_maximal_weight(v.d);
      return mixed_norm(u, kInf, 2, T) + std::pow(N, -w) * mixed_norm(u, v.d - 1, kInf, X) +
             sN * mixed_norm(u, kInf, 2, X) + forcing_part(u, N, v) / sN;
    }
    case VariantTag::sec4_local: {
      const double z = mixed_norm(u, kInf, 2, T) + mixed_norm(u, 4, kInf, T) + mixed_norm(u, 6, 6, X) +
                       mixed_norm(u, 2, kInf, X) / sN + sN * mixed_norm(u, kInf, 2, X);
      return z + forcing_part(u, N, v);
    }
    case VariantTag::sec6_global:
    case VariantTag::sec8_gwp:
      return mixed_norm(u, kInf, 2, T) + std::pow(N, -0.25) * mixed_norm(u, 4, kInf, X) +
             sN * mixed_norm(u, kInf, 2, X) + l1x_l2t(schrodinger_operator(u)) / sN;
    case VariantTag::sec7_modulation: {
      const int j0 = u.grid.zero_time_index();
      return l2_norm(u.slice_profile(j0)) + forcing_part(u, N, v);
    }
  }
  return 0;
}

namespace {

template <class BlockNorm>
double aggregate(const SpaceTimeField& u, double s, const NormVariant& v, bool homogeneous_only,
                 BlockNorm block_norm) {
  v.validate();
  const auto bands = representable_bands(u.grid.box_length, u.grid.nx);
  // blocks with no more than 1e-14 of the field's L² mass (outside its bands) count as zero
  const double floor = 1e-14 * l2_norm(u);
  auto block_norm_or_zero = [&](const SpaceTimeField& b, double N) {
    return l2_norm(b) <= floor ? 0.0 : block_norm(b, N);
  };
  if (v.tag == VariantTag::sec4_local) {
    double acc = 0;
    for (double N : bands)
      if (N >= 2) acc += std::pow(N, 2 * s) * std::pow(block_norm_or_zero(block(u, N, BandKind::band), N), 2);
    const double high = std::sqrt(acc);
    if (homogeneous_only) return high;
    return block_norm_or_zero(block(u, 1.0, BandKind::leq), 1.0) + high;
  }
  double acc0 = 0, accs = 0;
  for (double N : bands) {
    const double b = block_norm_or_zero(block(u, N, BandKind::band), N);
    acc0 += b * b;
    accs += std::pow(N, 2 * s) * b * b;
  }
  return homogeneous_only ? std::sqrt(accs) : std::sqrt(acc0) + std::sqrt(accs);
}

}  // namespace

double xs_norm(const SpaceTimeField& u, double s, const NormVariant& v, bool homogeneous_only) {
  return aggregate(u, s, v, homogeneous_only,
                   [&](const SpaceTimeField& b, double N) { return xn_norm(b, N, v); });
}

double ys_norm(const SpaceTimeField& F, double s, const NormVariant& v, bool homogeneous_only,
               const SplitFamily& family) {
  return aggregate(F, s, v, homogeneous_only,
                   [&](const SpaceTimeField& b, double N) { return yn_norm(b, N, v, family); });
}

double modulation_norm_spectral(const SpaceTimeField& ut, double b, double q) {
  if (!(q == 1 || std::isinf(q))) throw DomainError("modulation_norm supports q in {1, inf}");
  const GridSpec& g = ut.grid;
  std::map<int, double> mass;
  for (int m = 0; m < g.nt; ++m) {
    const double tau = g.tau(m);
    const cplx* row = ut.slice(m);
    for (int k = 0; k < g.nx; ++k) {
      const double a = std::norm(row[k]);
      if (a == 0) continue;
      mass[shell_of(std::abs(tau + g.xi(k) * g.xi(k)))] += a;
    }
  }
  const double measure = 1.0 / (g.box_length * g.period());
  double out = 0;
  for (const auto& [k, a] : mass) {
    const double term = std::exp2(k * b) * std::sqrt(a * measure);
    out = std::isinf(q) ? std::max(out, term) : out + term;
  }
  return out;
}

double modulation_norm(const SpaceTimeField& u, double b, double q) {
  return modulation_norm_spectral(fourier_xt(u), b, q);
}

}  // namespace gdnls
