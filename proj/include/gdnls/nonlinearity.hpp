#pragma once

#include <array>
#include <string>
#include <vector>

#include "gdnls/grid.hpp"

namespace gdnls {

// C * u^a0 * ubar^a1 * (u_x)^a2 * (ubar_x)^a3
struct Monomial {
  cplx coeff;
  std::array<int, 4> powers{};

  int degree() const { return powers[0] + powers[1] + powers[2] + powers[3]; }
  int derivatives() const { return powers[2] + powers[3]; }
  bool operator==(const Monomial&) const = default;
};

// Canonical form: monomials sorted by (degree, powers), duplicates merged,
// zero coefficients dropped. The empty list is the zero nonlinearity.
struct PolynomialSpec {
  std::vector<Monomial> monomials;

  bool is_zero() const { return monomials.empty(); }
  int d() const;  // lowest degree (0 for the zero polynomial)
  int l() const;  // highest degree
  bool one_derivative_per_term() const;
  // Re-parsable canonical text.
  std::string to_string() const;
  bool operator==(const PolynomialSpec&) const = default;
};

// Grammar (whitespace ignored):
//   poly   := ['+'|'-'] term (('+'|'-') term)*  |  '0'
//   term   := factor ('*' factor)*
//   factor := coeff | atom ['^' int] | 'dx(' inner ('*' inner)* ')'
//   atom   := 'u' | 'ubar' | 'ux' | 'ubarx' | '|u|^' even-int
//   inner  := coeff | ('u' | 'ubar') ['^' int] | '|u|^' even-int
//   coeff  := real | real 'i' | 'i' | '(' real (('+'|'-') real 'i')? ')'
// dx(...) is expanded by the product rule. Throws ParseError naming the
// offending term, DegreeError when some monomial has degree < 3.
PolynomialSpec parse_polynomial(const std::string& text);

// Zero-padding factor ceil((l+1)/2) used by evaluate.
int dealias_factor(const PolynomialSpec& P);

// P(u, ubar, u_x, ubar_x) slice by slice, with spectral derivatives and
// zero-padded products. Throws DealiasError when a slice carries relative
// spectral mass above `tol` beyond Nyquist/(l+1).
SpaceTimeField evaluate(const PolynomialSpec& P, const SpaceTimeField& u, double tol = 1e-8);
Profile evaluate(const PolynomialSpec& P, const Profile& u, double tol = 1e-8);

struct GaugeDiagnostics {
  double boundary_mass_fraction = 0;  // worst slice, outer 5% of the box on each side
  bool warned = false;
};

// v = u exp(ik ∫_{-L/2}^x |u|^2), cumulative trapezoid from the left box edge.
// A boundary mass fraction above 1e-8 sets `warned` (and prints a warning
// when no diagnostics sink is given).
SpaceTimeField gauge_transform(const SpaceTimeField& u, double k, GaugeDiagnostics* diag = nullptr);
Profile gauge_transform(const Profile& u, double k, GaugeDiagnostics* diag = nullptr);

struct TakaokaReport {
  double residual = 0;        // ||(i∂t+Δ)v + i v^2 (v̄)_x + |v|^4 v / 2|| / ||v||
  double nonlinear_size = 0;  // ||i v^2 (v̄)_x + |v|^4 v / 2|| / ||v||
};
TakaokaReport takaoka_report(const SpaceTimeField& u);
double takaoka_residual(const SpaceTimeField& u);

// u_λ(x,t) = λ^{1/(d-1)} u(λx, λ²t) for dyadic λ. The output lives on the
// same spatial axis and on the time window [t_min, t_max]/λ², so every
// sample is an exact sample (or exact band-limited interpolant) of u.
SpaceTimeField rescale(const SpaceTimeField& u, double lambda, int d);
Profile rescale(const Profile& u, double lambda, int d);

}  // namespace gdnls
