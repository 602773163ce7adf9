#include "gdnls/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gdnls/propagator.hpp"

namespace gdnls {

SpaceTimeField picard_map(const SpaceTimeField& free_part, const PolynomialSpec& P, const SpaceTimeField& u) {
  require_same_shape(free_part, u);
  if (P.is_zero()) return free_part;
  return free_part + duhamel(evaluate(P, u));
}

PicardTrace picard_iterate(const Profile& u0, const PolynomialSpec& P, double s, const NormVariant& v, int k_max,
                           const GridSpec& grid, const PicardOptions& opts) {
  if (k_max < 1) throw DomainError("picard_iterate needs k_max >= 1");
  grid.validate();
  v.validate();
  PicardTrace trace;
  const SpaceTimeField free_part = free_evolve(u0, grid);
  SpaceTimeField u = free_part;
  trace.iterates.push_back(u);
  int growth_streak = 0;
  for (int k = 0; k < k_max; ++k) {
    SpaceTimeField next = picard_map(free_part, P, u);
    const double diff = xs_norm(next - u, s, v);
    if (!trace.diffs.empty()) {
      const double prev = trace.diffs.back();
      const double ratio = prev > 0 ? diff / prev : (diff > 0 ? std::numeric_limits<double>::infinity() : 0.0);
      trace.ratios.push_back(ratio);
      growth_streak = ratio > 10 ? growth_streak + 1 : 0;
    }
    trace.diffs.push_back(diff);
    if (!opts.keep_iterates) trace.iterates.clear();
    trace.iterates.push_back(next);
    u = std::move(next);
    if (growth_streak >= 2) {
      trace.diverged = true;
      break;
    }
    if (diff == 0) break;  // exact fixed point (zero data or zero nonlinearity)
  }
  trace.fixed_point_residual = xs_norm(picard_map(free_part, P, u) - u, s, v);
  if (trace.diverged) {
    trace.a_posteriori_error = std::numeric_limits<double>::infinity();
  } else if (trace.diffs.back() == 0) {
    trace.a_posteriori_error = 0;
  } else if (!trace.ratios.empty() && trace.ratios.back() < 1) {
    const double q = trace.ratios.back();
    trace.a_posteriori_error = q / (1 - q) * trace.diffs.back();
  } else {
    trace.a_posteriori_error = std::numeric_limits<double>::infinity();
  }
  return trace;
}

double contraction_constant(int d, double c1, double c2) {
  if (d < 2) throw DomainError("contraction_constant needs d >= 2");
  if (!(c1 > 0) || !(c2 > 0) || !std::isfinite(c1) || !std::isfinite(c2))
    throw DependencyError("contraction_constant needs positive measured constants c1, c2");
  const double e = -1.0 / (d - 1);
  return std::min(std::pow(8 * c1 * c2, e), std::pow(4 * c2, e));
}

double contraction_constant(const PolynomialSpec& P, const std::optional<MeasuredConstants>& c) {
  if (!c) throw DependencyError("contraction_constant: no measured constants (run the linear and multilinear cases first)");
  if (P.is_zero()) throw DomainError("contraction_constant: zero nonlinearity");
  return contraction_constant(P.d(), c->c1, c->c2);
}

namespace {

struct InteractionRhs {
  const PolynomialSpec& P;
  std::vector<double> xi2;
  double L;

  // d/dt of e^{itξ²}û given the interaction-picture state.
  Profile operator()(double t, const Profile& vhat) const {
    const int nx = vhat.nx();
    Profile uhat(L, nx);
    for (int k = 0; k < nx; ++k) uhat.values[k] = vhat.values[k] * std::polar(1.0, -t * xi2[k]);
    const Profile F = fourier_x(evaluate(P, inverse_fourier_x(uhat)));
    Profile out(L, nx);
    for (int k = 0; k < nx; ++k) out.values[k] = cplx(0, -1) * std::polar(1.0, t * xi2[k]) * F.values[k];
    return out;
  }
};

Profile axpy(const Profile& a, cplx c, const Profile& b) {
  Profile r = a;
  for (int k = 0; k < r.nx(); ++k) r.values[k] += c * b.values[k];
  return r;
}

SpaceTimeField march(const Profile& u0, const PolynomialSpec& P, const GridSpec& grid, int sub) {
  const int j0 = grid.zero_time_index();
  InteractionRhs rhs{P, {}, grid.box_length};
  rhs.xi2.resize(grid.nx);
  for (int k = 0; k < grid.nx; ++k) rhs.xi2[k] = grid.xi(k) * grid.xi(k);
  SpaceTimeField out(grid);
  out.set_slice(j0, u0);
  const Profile v0 = fourier_x(u0);
  auto to_physical = [&](const Profile& v, double t) {
    Profile uh = v;
    for (int k = 0; k < grid.nx; ++k) uh.values[k] *= std::polar(1.0, -t * rhs.xi2[k]);
    return inverse_fourier_x(uh);
  };
  for (int dir : {+1, -1}) {
    const double h = dir * grid.dt() / sub;
    Profile v = v0;
    double t = 0;
    for (int j = j0; dir > 0 ? j + 1 < grid.nt : j > 0; j += dir) {
      for (int s = 0; s < sub; ++s) {
        if (P.is_zero()) break;
        const Profile k1 = rhs(t, v);
        const Profile k2 = rhs(t + h / 2, axpy(v, h / 2, k1));
        const Profile k3 = rhs(t + h / 2, axpy(v, h / 2, k2));
        const Profile k4 = rhs(t + h, axpy(v, h, k3));
        for (int k = 0; k < grid.nx; ++k)
          v.values[k] += h / 6 * (k1.values[k] + 2.0 * k2.values[k] + 2.0 * k3.values[k] + k4.values[k]);
        t += h;
      }
      if (P.is_zero()) t += h * sub;
      out.set_slice(j + dir, to_physical(v, grid.t(j + dir)));
    }
  }
  return out;
}

}  // namespace

SpaceTimeField reference_solve(const Profile& u0, const PolynomialSpec& P, const GridSpec& grid, double dt,
                               const ReferenceOptions& opts) {
  grid.validate();
  if (!(dt > 0)) throw DomainError("reference_solve needs dt > 0");
  if (u0.nx() != grid.nx || u0.box_length != grid.box_length)
    throw ShapeError("reference_solve: profile does not match the grid's spatial axis");
  const int sub = std::max(1, static_cast<int>(std::ceil(grid.dt() / dt - 1e-12)));
  SpaceTimeField fine = march(u0, P, grid, 2 * sub);
  if (opts.check_halving && !P.is_zero()) {
    const SpaceTimeField coarse = march(u0, P, grid, sub);
    double diff = 0, scale = 0;
    for (std::size_t i = 0; i < fine.values.size(); ++i) {
      diff = std::max(diff, std::abs(fine.values[i] - coarse.values[i]));
      scale = std::max(scale, std::abs(fine.values[i]));
    }
    if (scale > 0 && diff / scale >= opts.halving_tol)
      throw ResolutionError("reference_solve: halving dt changed the solution by " + std::to_string(diff / scale));
  }
  return fine;
}

double equation_residual(const SpaceTimeField& u, const PolynomialSpec& P) {
  const double nu = l2_norm(u);
  if (nu == 0) return 0;
  return l2_norm(schrodinger_operator(u) - evaluate(P, u)) / nu;
}

}  // namespace gdnls
