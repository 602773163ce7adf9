#include "gdnls/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace gdnls {
namespace {

std::vector<double> xi_squared(const GridSpec& g) {
  std::vector<double> out(g.nx);
  for (int k = 0; k < g.nx; ++k) out[k] = g.xi(k) * g.xi(k);
  return out;
}

// Multiply spectral row j by e^{sign * i t_j xi^2}.
void phase_rows(SpaceTimeField& h, int sign) {
  const auto xi2 = xi_squared(h.grid);
  for (int j = 0; j < h.grid.nt; ++j) {
    const double t = h.grid.t(j);
    cplx* row = h.slice(j);
    for (int k = 0; k < h.grid.nx; ++k) row[k] *= std::polar(1.0, sign * t * xi2[k]);
  }
}

int next_pow2(double v) {
  int n = 8;
  while (n < v) n *= 2;
  return n;
}

}  // namespace

SpaceTimeField free_evolve(const Profile& u0, const GridSpec& grid) {
  grid.validate();
  if (u0.nx() != grid.nx || u0.box_length != grid.box_length)
    throw ShapeError("free_evolve: profile does not match the grid's spatial axis");
  const Profile h = fourier_x(u0);
  SpaceTimeField out(grid);
  for (int j = 0; j < grid.nt; ++j) std::copy(h.values.begin(), h.values.end(), out.slice(j));
  phase_rows(out, -1);
  inverse_fourier_x_inplace(out);
  return out;
}

Profile free_slice(const Profile& u0, double t) {
  Profile h = fourier_x(u0);
  for (int k = 0; k < h.nx(); ++k) h.values[k] *= std::polar(1.0, -t * h.xi(k) * h.xi(k));
  return inverse_fourier_x(h);
}

SpaceTimeField duhamel(const SpaceTimeField& F) {
  const GridSpec& g = F.grid;
  const int j0 = g.zero_time_index();
  SpaceTimeField G = fourier_x(F);
  phase_rows(G, +1);
  SpaceTimeField V(g);
  const double half = 0.5 * g.dt();
  const int nx = g.nx;
  for (int j = j0; j + 1 < g.nt; ++j) {
    const cplx *a = G.slice(j), *b = G.slice(j + 1);
    const cplx* v = V.slice(j);
    cplx* w = V.slice(j + 1);
    for (int k = 0; k < nx; ++k) w[k] = v[k] + half * (a[k] + b[k]);
  }
  for (int j = j0; j > 0; --j) {
    const cplx *a = G.slice(j), *b = G.slice(j - 1);
    const cplx* v = V.slice(j);
    cplx* w = V.slice(j - 1);
    for (int k = 0; k < nx; ++k) w[k] = v[k] - half * (a[k] + b[k]);
  }
  for (auto& v : V.values) v *= cplx(0, -1);
  phase_rows(V, -1);
  inverse_fourier_x_inplace(V);
  return V;
}

SpaceTimeField schrodinger_operator(const SpaceTimeField& u) {
  const GridSpec& g = u.grid;
  if (g.nt < 3) throw ShapeError("schrodinger_operator needs at least 3 time samples");
  SpaceTimeField V = fourier_x(u);
  phase_rows(V, +1);
  SpaceTimeField D(g);
  const int nx = g.nx, nt = g.nt;
  const double inv = 1.0 / (2 * g.dt());
  for (int j = 0; j < nt; ++j) {
    cplx* d = D.slice(j);
    if (j == 0) {
      const cplx *a = V.slice(0), *b = V.slice(1), *c = V.slice(2);
      for (int k = 0; k < nx; ++k) d[k] = (-3.0 * a[k] + 4.0 * b[k] - c[k]) * inv;
    } else if (j == nt - 1) {
      const cplx *a = V.slice(j), *b = V.slice(j - 1), *c = V.slice(j - 2);
      for (int k = 0; k < nx; ++k) d[k] = (3.0 * a[k] - 4.0 * b[k] + c[k]) * inv;
    } else {
      const cplx *a = V.slice(j + 1), *b = V.slice(j - 1);
      for (int k = 0; k < nx; ++k) d[k] = (a[k] - b[k]) * inv;
    }
  }
  for (auto& v : D.values) v *= cplx(0, 1);
  phase_rows(D, -1);
  inverse_fourier_x_inplace(D);
  return D;
}

KernelSample kernel(double N, KernelKind kind, const GridSpec& grid) {
  grid.validate();
  if (kind != KernelKind::K0_fundamental) {
    if (!is_dyadic(N)) throw BandError("kernel: N must be dyadic");
    if (!(16 * N < grid.nyquist())) throw BandError("kernel: 16N must lie below the Nyquist wavenumber");
  }
  Profile spec(grid.box_length, grid.nx);
  for (int k = 0; k < grid.nx; ++k) {
    const double w = kind == KernelKind::K0_fundamental ? 1.0 : psi(grid.xi(k) / (4 * N));
    spec.values[k] = 2 * kPi * w;
  }
  SpaceTimeField out(grid);
  for (int j = 0; j < grid.nt; ++j) std::copy(spec.values.begin(), spec.values.end(), out.slice(j));
  phase_rows(out, -1);
  inverse_fourier_x_inplace(out);
  if (kind == KernelKind::K1_truncated) {
    for (int j = 0; j < grid.nt; ++j)
      if (std::abs(grid.t(j)) > 2.0) std::fill(out.slice(j), out.slice(j) + grid.nx, cplx(0));
  }
  return {std::move(out), N, kind};
}

double maximal_exponent(double gamma) {
  if (!(gamma >= 2)) throw DomainError("maximal exponent needs gamma >= 2");
  return gamma < 4 ? 1.0 / gamma : (gamma - 2) / (2 * gamma);
}

std::vector<double> geometric_times(double t_lo, double t_hi, int per_octave) {
  std::vector<double> out{0.0};
  const double r = std::exp2(1.0 / per_octave);
  for (double t = t_lo; t < t_hi; t *= r) out.push_back(t);
  out.push_back(t_hi);
  return out;
}

KernelGrid kernel_eval_grid(double N, KernelKind kind) {
  KernelGrid kg;
  if (kind == KernelKind::K1_truncated) {
    // Stationary points x = 2tξ reach |x| = 64N by t = 2; keep them off the wrap.
    kg.box_length = 160 * N;
    kg.times = geometric_times(1.0 / (256 * N * N), 2.0, 16);
  } else {
    kg.box_length = 64 * kPi;
    kg.times = geometric_times(1.0 / (256 * N * N), 4.0, 16);
  }
  kg.nx = next_pow2(1.1 * 16 * N * kg.box_length / kPi);
  return kg;
}

std::vector<double> sup_over_times(const Profile& u0_hat, const std::vector<double>& times) {
  const int nx = u0_hat.nx();
  std::vector<double> sup(nx, 0.0);
  std::vector<double> xi2(nx);
  for (int k = 0; k < nx; ++k) xi2[k] = u0_hat.xi(k) * u0_hat.xi(k);
  Profile work(u0_hat.box_length, nx);
  for (double t : times) {
    for (int k = 0; k < nx; ++k) work.values[k] = u0_hat.values[k] * std::polar(1.0, -t * xi2[k]);
    const Profile slice = inverse_fourier_x(work);
    for (int m = 0; m < nx; ++m) sup[m] = std::max(sup[m], std::abs(slice.values[m]));
  }
  return sup;
}

double kernel_norm(double N, KernelKind kind, double gamma) {
  if (kind == KernelKind::K0_fundamental) throw DomainError("kernel_bound is defined for K1 and K2 only");
  if (!(gamma >= 2)) throw DomainError("kernel_bound needs gamma >= 2");
  if (gamma < 4 && kind != KernelKind::K1_truncated)
    throw DomainError("gamma in [2,4) is only meaningful for the truncated kernel K1");
  if (!is_dyadic(N)) throw BandError("kernel_bound: N must be dyadic");
  const KernelGrid kg = kernel_eval_grid(N, kind);
  if (kg.nx > (1 << 22)) throw BandError("kernel_bound: N too large for the internal grid budget");
  Profile spec(kg.box_length, kg.nx);
  for (int k = 0; k < kg.nx; ++k) spec.values[k] = 2 * kPi * psi(spec.xi(k) / (4 * N));
  const auto pos = sup_over_times(spec, kg.times);
  // |K(x,-t)| = |K(-x,t)|, and -x_m is sample nx - m on the periodic axis.
  const double p = gamma / 2;
  double acc = 0;
  for (int m = 0; m < kg.nx; ++m) {
    const double s = std::max(pos[m], pos[(kg.nx - m) % kg.nx]);
    acc += std::pow(s, p);
  }
  return std::pow(acc * spec.dx(), 1.0 / p);
}

double kernel_bound(double N, KernelKind kind, double gamma) {
  return kernel_norm(N, kind, gamma) / std::pow(N, 2 * maximal_exponent(gamma));
}

}  // namespace gdnls
