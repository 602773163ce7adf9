#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "gdnls/errors.hpp"

namespace gdnls {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

// Signed index of FFT slot k on an n-point axis: k for k < n/2, k - n otherwise.
inline int signed_index(int k, int n) { return k < n / 2 ? k : k - n; }

// Periodic space-time discretization.
//   x_m = -L/2 + m*dx,  xi_k = 2*pi*k'/L
//   t_j = t_min + j*dt, tau_m = 2*pi*(m' + 1/2)/(t_max - t_min)
// The half-bin offset in tau keeps tau + xi^2 away from zero on the grid.
struct GridSpec {
  double box_length = 64 * kPi;
  int nx = 2048;
  double t_min = -4.0;
  double t_max = 4.0;
  int nt = 1024;

  void validate() const;

  double dx() const { return box_length / nx; }
  double period() const { return t_max - t_min; }
  double dt() const { return period() / nt; }
  double x(int m) const { return -0.5 * box_length + m * dx(); }
  double t(int j) const { return t_min + j * dt(); }
  double xi(int k) const { return 2 * kPi * signed_index(k, nx) / box_length; }
  double tau(int m) const { return 2 * kPi * (signed_index(m, nt) + 0.5) / period(); }
  double nyquist() const { return kPi * nx / box_length; }
  double tau_nyquist() const { return kPi * nt / period(); }
  std::size_t size() const { return std::size_t(nx) * std::size_t(nt); }

  // Index j with t_j == 0; throws GridAlignmentError when 0 is not a sample.
  int zero_time_index() const;

  bool operator==(const GridSpec&) const = default;
};

// A spatial profile on a periodic box. The same container holds spectra
// (slots in FFT order) when produced by fourier_x.
struct Profile {
  double box_length = 64 * kPi;
  CVec values;

  Profile() = default;
  Profile(double L, int n) : box_length(L), values(std::size_t(n)) {}
  Profile(double L, CVec v) : box_length(L), values(std::move(v)) {}

  int nx() const { return static_cast<int>(values.size()); }
  double dx() const { return box_length / nx(); }
  double x(int m) const { return -0.5 * box_length + m * dx(); }
  double xi(int k) const { return 2 * kPi * signed_index(k, nx()) / box_length; }
  double nyquist() const { return kPi * nx() / box_length; }
};

// Samples u(x_m, t_j), stored time-major: values[j * nx + m].
struct SpaceTimeField {
  GridSpec grid;
  CVec values;

  SpaceTimeField() = default;
  explicit SpaceTimeField(const GridSpec& g) : grid(g), values(g.size()) {}
  SpaceTimeField(const GridSpec& g, CVec v);

  cplx& at(int m, int j) { return values[std::size_t(j) * grid.nx + m]; }
  const cplx& at(int m, int j) const { return values[std::size_t(j) * grid.nx + m]; }
  cplx* slice(int j) { return values.data() + std::size_t(j) * grid.nx; }
  const cplx* slice(int j) const { return values.data() + std::size_t(j) * grid.nx; }

  Profile slice_profile(int j) const;
  void set_slice(int j, const Profile& p);
};

SpaceTimeField operator+(const SpaceTimeField& a, const SpaceTimeField& b);
SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b);
SpaceTimeField operator*(cplx c, const SpaceTimeField& a);
Profile operator+(const Profile& a, const Profile& b);
Profile operator-(const Profile& a, const Profile& b);
Profile operator*(cplx c, const Profile& a);

void require_same_shape(const SpaceTimeField& a, const SpaceTimeField& b);
void require_same_shape(const Profile& a, const Profile& b);

// Physical-side L^2 norms (Riemann sums).
double l2_norm(const Profile& u);
double l2_norm(const SpaceTimeField& u);
// Fourier-side L^2 norms with measure dxi/2pi (and dtau/2pi); equal to the
// physical norms by Parseval.
double l2_norm_spectral_x(const Profile& uhat);
double l2_norm_spectral_xt(const SpaceTimeField& utilde);

// Transforms. uhat(xi_k) = sum_m u(x_m) e^{-i xi_k x_m} dx, inverse (1/L) sum_k.
// In time: u~(tau_m) = sum_j u(t_j) e^{-i tau_m t_j} dt, inverse (1/T) sum_m.
Profile fourier_x(const Profile& u);
Profile inverse_fourier_x(const Profile& uhat);
SpaceTimeField fourier_x(const SpaceTimeField& u);
SpaceTimeField inverse_fourier_x(const SpaceTimeField& uhat);
SpaceTimeField fourier_t(const SpaceTimeField& u);
SpaceTimeField inverse_fourier_t(const SpaceTimeField& u);
SpaceTimeField fourier_xt(const SpaceTimeField& u);
SpaceTimeField inverse_fourier_xt(const SpaceTimeField& utilde);

void fourier_x_inplace(SpaceTimeField& u);
void inverse_fourier_x_inplace(SpaceTimeField& u);
void fourier_t_inplace(SpaceTimeField& u);
void inverse_fourier_t_inplace(SpaceTimeField& u);

// Littlewood-Paley machinery.
double psi(double xi);

enum class BandKind { band, leq, gt };

struct DyadicBand {
  double N = 1.0;
  BandKind kind = BandKind::band;
};

bool is_dyadic(double N);
double band_multiplier(const DyadicBand& b, double xi);
// 4N below the Nyquist wavenumber and N >= 2pi/L.
bool representable(double N, double box_length, int nx);
void require_representable(double N, double box_length, int nx);
// Representable dyadic N on the axis, ascending.
std::vector<double> representable_bands(double box_length, int nx);

Profile apply_multiplier(const Profile& u, const std::function<cplx(double)>& m);
SpaceTimeField apply_multiplier(const SpaceTimeField& u, const std::function<cplx(double)>& m);

Profile project(const Profile& u, const DyadicBand& b);
SpaceTimeField project(const SpaceTimeField& u, const DyadicBand& b);

enum class RieszSign { plus, minus };
Profile riesz(const Profile& u, RieszSign s);
SpaceTimeField riesz(const SpaceTimeField& u, RieszSign s);

// Spectral d/dx.
Profile dx(const Profile& u);
SpaceTimeField dx(const SpaceTimeField& u);

// ||d/dx P_N f|| / (N ||P_N f||) in L^p_x L^q_t.
double bernstein_ratio(const SpaceTimeField& f, double N, double p, double q);

}  // namespace gdnls
