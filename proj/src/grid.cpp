#include "gdnls/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "gdnls/norms.hpp"

namespace gdnls {
namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Phase (-1)^k that moves the origin of the x axis to the box centre.
double centre_sign(int k) { return (k & 1) ? -1.0 : 1.0; }

void scale_rows(cplx* data, int rows, int row_len, const std::function<cplx(int)>& factor) {
  for (int r = 0; r < rows; ++r) {
    const cplx f = factor(r);
    cplx* row = data + std::size_t(r) * row_len;
    for (int c = 0; c < row_len; ++c) row[c] *= f;
  }
}

void forward_x_rows(cplx* data, int nx, int rows, double dx) {
  detail::fft_many(data, nx, rows, 1, nx, -1);
  for (int r = 0; r < rows; ++r) {
    cplx* row = data + std::size_t(r) * nx;
    for (int k = 0; k < nx; ++k) row[k] *= centre_sign(k) * dx;
  }
}

void inverse_x_rows(cplx* data, int nx, int rows, double L) {
  for (int r = 0; r < rows; ++r) {
    cplx* row = data + std::size_t(r) * nx;
    for (int k = 0; k < nx; ++k) row[k] *= centre_sign(k) / L;
  }
  detail::fft_many(data, nx, rows, 1, nx, +1);
}

}  // namespace

void GridSpec::validate() const {
  if (!(box_length > 0)) throw ShapeError("box_length must be positive");
  if (!power_of_two(nx) || nx < 8) throw ShapeError("nx must be a power of two >= 8");
  if (!power_of_two(nt) || nt < 8) throw ShapeError("nt must be a power of two >= 8");
  if (!(t_min < 0 && 0 < t_max)) throw ShapeError("time window must satisfy t_min < 0 < t_max");
}

int GridSpec::zero_time_index() const {
  const double pos = -t_min / dt();
  const int j = static_cast<int>(std::lround(pos));
  if (std::abs(pos - j) > 1e-9 || j < 0 || j >= nt)
    throw GridAlignmentError("t = 0 is not a sample of the time grid");
  return j;
}

SpaceTimeField::SpaceTimeField(const GridSpec& g, CVec v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw ShapeError("field values do not match grid size");
}

Profile SpaceTimeField::slice_profile(int j) const {
  return Profile(grid.box_length, CVec(slice(j), slice(j) + grid.nx));
}

void SpaceTimeField::set_slice(int j, const Profile& p) {
  if (p.nx() != grid.nx) throw ShapeError("slice length mismatch");
  std::copy(p.values.begin(), p.values.end(), slice(j));
}

void require_same_shape(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size())
    throw ShapeError("fields live on different grids");
}

void require_same_shape(const Profile& a, const Profile& b) {
  if (a.nx() != b.nx() || a.box_length != b.box_length)
    throw ShapeError("profiles live on different axes");
}

SpaceTimeField operator+(const SpaceTimeField& a, const SpaceTimeField& b) {
  require_same_shape(a, b);
  SpaceTimeField r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
  return r;
}

SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b) {
  require_same_shape(a, b);
  SpaceTimeField r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
  return r;
}

SpaceTimeField operator*(cplx c, const SpaceTimeField& a) {
  SpaceTimeField r = a;
  for (auto& v : r.values) v *= c;
  return r;
}

Profile operator+(const Profile& a, const Profile& b) {
  require_same_shape(a, b);
  Profile r = a;
  for (int i = 0; i < r.nx(); ++i) r.values[i] += b.values[i];
  return r;
}

Profile operator-(const Profile& a, const Profile& b) {
  require_same_shape(a, b);
  Profile r = a;
  for (int i = 0; i < r.nx(); ++i) r.values[i] -= b.values[i];
  return r;
}

Profile operator*(cplx c, const Profile& a) {
  Profile r = a;
  for (auto& v : r.values) v *= c;
  return r;
}

double l2_norm(const Profile& u) {
  double s = 0;
  for (const auto& v : u.values) s += std::norm(v);
  return std::sqrt(s * u.dx());
}

double l2_norm(const SpaceTimeField& u) {
  double s = 0;
  for (const auto& v : u.values) s += std::norm(v);
  return std::sqrt(s * u.grid.dx() * u.grid.dt());
}

double l2_norm_spectral_x(const Profile& uhat) {
  double s = 0;
  for (const auto& v : uhat.values) s += std::norm(v);
  return std::sqrt(s / uhat.box_length);
}

double l2_norm_spectral_xt(const SpaceTimeField& ut) {
  double s = 0;
  for (const auto& v : ut.values) s += std::norm(v);
  return std::sqrt(s / (ut.grid.box_length * ut.grid.period()));
}

Profile fourier_x(const Profile& u) {
  Profile r = u;
  forward_x_rows(r.values.data(), r.nx(), 1, r.dx());
  return r;
}

Profile inverse_fourier_x(const Profile& uhat) {
  Profile r = uhat;
  inverse_x_rows(r.values.data(), r.nx(), 1, r.box_length);
  return r;
}

void fourier_x_inplace(SpaceTimeField& u) {
  forward_x_rows(u.values.data(), u.grid.nx, u.grid.nt, u.grid.dx());
}

void inverse_fourier_x_inplace(SpaceTimeField& u) {
  inverse_x_rows(u.values.data(), u.grid.nx, u.grid.nt, u.grid.box_length);
}

void fourier_t_inplace(SpaceTimeField& u) {
  const GridSpec& g = u.grid;
  scale_rows(u.values.data(), g.nt, g.nx,
             [&](int j) { return std::polar(1.0, -kPi * j / g.nt); });
  detail::fft_many(u.values.data(), g.nt, g.nx, g.nx, 1, -1);
  scale_rows(u.values.data(), g.nt, g.nx,
             [&](int m) { return g.dt() * std::polar(1.0, -g.tau(m) * g.t_min); });
}

void inverse_fourier_t_inplace(SpaceTimeField& u) {
  const GridSpec& g = u.grid;
  scale_rows(u.values.data(), g.nt, g.nx,
             [&](int m) { return std::polar(1.0, g.tau(m) * g.t_min); });
  detail::fft_many(u.values.data(), g.nt, g.nx, g.nx, 1, +1);
  scale_rows(u.values.data(), g.nt, g.nx,
             [&](int j) { return std::polar(1.0 / g.period(), kPi * j / g.nt); });
}

SpaceTimeField fourier_x(const SpaceTimeField& u) {
  SpaceTimeField r = u;
  fourier_x_inplace(r);
  return r;
}

SpaceTimeField inverse_fourier_x(const SpaceTimeField& u) {
  SpaceTimeField r = u;
  inverse_fourier_x_inplace(r);
  return r;
}

SpaceTimeField fourier_t(const SpaceTimeField& u) {
  SpaceTimeField r = u;
  fourier_t_inplace(r);
  return r;
}

SpaceTimeField inverse_fourier_t(const SpaceTimeField& u) {
  SpaceTimeField r = u;
  inverse_fourier_t_inplace(r);
  return r;
}

SpaceTimeField fourier_xt(const SpaceTimeField& u) {
  SpaceTimeField r = u;
  fourier_x_inplace(r);
  fourier_t_inplace(r);
  return r;
}

SpaceTimeField inverse_fourier_xt(const SpaceTimeField& ut) {
  SpaceTimeField r = ut;
  inverse_fourier_t_inplace(r);
  inverse_fourier_x_inplace(r);
  return r;
}

// Smooth step: 1 on |xi| <= 2, 0 on |xi| >= 4, built from e^{-1/s} so that
// every derivative matches at both ends of the ramp.
double psi(double xi) {
  const double a = std::abs(xi);
  if (a <= 2) return 1.0;
  if (a >= 4) return 0.0;
  const double up = std::exp(-1.0 / (4 - a));
  const double down = std::exp(-1.0 / (a - 2));
  return up / (up + down);
}

bool is_dyadic(double N) {
  if (!(N > 0) || !std::isfinite(N)) return false;
  int e = 0;
  return std::frexp(N, &e) == 0.5;
}

double band_multiplier(const DyadicBand& b, double xi) {
  switch (b.kind) {
    case BandKind::band: return psi(xi / b.N) - psi(2 * xi / b.N);
    case BandKind::leq: return psi(xi / b.N);
    case BandKind::gt: return 1.0 - psi(xi / b.N);
  }
  return 0.0;
}

bool representable(double N, double box_length, int nx) {
  if (!is_dyadic(N)) return false;
  const double nyq = kPi * nx / box_length;
  return 4 * N < nyq && N >= 2 * kPi / box_length * (1 - 1e-12);
}

void require_representable(double N, double box_length, int nx) {
  if (!is_dyadic(N)) throw BandError("band parameter " + std::to_string(N) + " is not dyadic");
  if (!representable(N, box_length, nx))
    throw BandError("band N=" + std::to_string(N) + " is not representable (need 2pi/L <= N, 4N < " +
                    std::to_string(kPi * nx / box_length) + ")");
}

std::vector<double> representable_bands(double box_length, int nx) {
  std::vector<double> out;
  double N = std::exp2(std::ceil(std::log2(2 * kPi / box_length) - 1e-12));
  for (; representable(N, box_length, nx); N *= 2) out.push_back(N);
  return out;
}

Profile apply_multiplier(const Profile& u, const std::function<cplx(double)>& m) {
  Profile h = fourier_x(u);
  for (int k = 0; k < h.nx(); ++k) h.values[k] *= m(h.xi(k));
  return inverse_fourier_x(h);
}

SpaceTimeField apply_multiplier(const SpaceTimeField& u, const std::function<cplx(double)>& m) {
  SpaceTimeField h = fourier_x(u);
  const int nx = h.grid.nx;
  CVec w(nx);
  for (int k = 0; k < nx; ++k) w[k] = m(h.grid.xi(k));
  for (int j = 0; j < h.grid.nt; ++j) {
    cplx* row = h.slice(j);
    for (int k = 0; k < nx; ++k) row[k] *= w[k];
  }
  inverse_fourier_x_inplace(h);
  return h;
}

Profile project(const Profile& u, const DyadicBand& b) {
  require_representable(b.N, u.box_length, u.nx());
  return apply_multiplier(u, [&](double xi) { return cplx(band_multiplier(b, xi)); });
}

SpaceTimeField project(const SpaceTimeField& u, const DyadicBand& b) {
  require_representable(b.N, u.grid.box_length, u.grid.nx);
  return apply_multiplier(u, [&](double xi) { return cplx(band_multiplier(b, xi)); });
}

Profile riesz(const Profile& u, RieszSign s) {
  return apply_multiplier(u, [&](double xi) {
    return cplx((xi >= 0) == (s == RieszSign::plus) ? 1.0 : 0.0);
  });
}

SpaceTimeField riesz(const SpaceTimeField& u, RieszSign s) {
  return apply_multiplier(u, [&](double xi) {
    return cplx((xi >= 0) == (s == RieszSign::plus) ? 1.0 : 0.0);
  });
}

Profile dx(const Profile& u) {
  return apply_multiplier(u, [](double xi) { return cplx(0, xi); });
}

SpaceTimeField dx(const SpaceTimeField& u) {
  return apply_multiplier(u, [](double xi) { return cplx(0, xi); });
}

double bernstein_ratio(const SpaceTimeField& f, double N, double p, double q) {
  const SpaceTimeField pn = project(f, {N, BandKind::band});
  const double den = N * mixed_norm(pn, p, q, NormOrder::x_then_t);
  if (!(den > 0)) throw UndefinedRatio("bernstein_ratio: projected field vanishes");
  return mixed_norm(dx(pn), p, q, NormOrder::x_then_t) / den;
}

}  // namespace gdnls
