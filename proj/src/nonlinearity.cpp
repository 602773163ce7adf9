#include "gdnls/nonlinearity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>

#include "gdnls/norms.hpp"
#include "gdnls/propagator.hpp"

namespace gdnls {
namespace {

using Poly = std::vector<Monomial>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Monomial m{x.coeff * y.coeff, {}};
      for (int i = 0; i < 4; ++i) m.powers[i] = x.powers[i] + y.powers[i];
      out.push_back(m);
    }
  return out;
}

Poly canonical(const Poly& in) {
  std::map<std::pair<int, std::array<int, 4>>, cplx> acc;
  for (const auto& m : in) acc[{m.degree(), m.powers}] += m.coeff;
  Poly out;
  for (const auto& [key, c] : acc)
    if (c != cplx(0)) out.push_back({c, key.second});
  return out;
}

class TermParser {
 public:
  explicit TermParser(std::string term) : text_(std::move(term)) {
    for (char c : text_)
      if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
  }

  Poly parse() {
    if (s_.empty()) fail("empty term");
    Poly acc{Monomial{1.0, {}}};
    acc = multiply(acc, factor(false));
    while (pos_ < s_.size()) {
      expect('*');
      acc = multiply(acc, factor(false));
    }
    return acc;
  }

 private:
  std::string text_, s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("malformed term '" + text_ + "': " + why);
  }

  bool peek(const std::string& lit) const { return s_.compare(pos_, lit.size(), lit) == 0; }
  bool at_end() const { return pos_ >= s_.size(); }

  void expect(char c) {
    if (at_end() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  int integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  double real() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  bool imaginary_unit_here() const {
    return !at_end() && s_[pos_] == 'i' && (pos_ + 1 >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_ + 1])));
  }

  cplx paren_coefficient() {
    expect('(');
    cplx c = 0;
    bool any = false;
    while (!at_end() && s_[pos_] != ')') {
      double sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (any) {
        fail("expected '+' or '-' inside complex coefficient");
      }
      double v = 1;
      if (!imaginary_unit_here()) v = real();
      if (imaginary_unit_here()) {
        ++pos_;
        c += cplx(0, sign * v);
      } else {
        c += sign * v;
      }
      any = true;
    }
    if (!any) fail("empty parentheses");
    expect(')');
    return c;
  }

  int power() {
    if (!at_end() && s_[pos_] == '^') {
      ++pos_;
      return integer();
    }
    return 1;
  }

  Poly factor(bool inside_dx) {
    if (at_end()) fail("missing factor");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const double v = real();
      if (imaginary_unit_here()) {
        ++pos_;
        return {Monomial{cplx(0, v), {}}};
      }
      return {Monomial{v, {}}};
    }
    if (imaginary_unit_here()) {
      ++pos_;
      return {Monomial{cplx(0, 1), {}}};
    }
    if (c == '(') return {Monomial{paren_coefficient(), {}}};
    if (peek("|u|^")) {
      pos_ += 4;
      const int k = integer();
      if (k % 2 != 0) fail("|u|^k needs an even k");
      return {Monomial{1.0, {k / 2, k / 2, 0, 0}}};
    }
    if (peek("dx(")) {
      if (inside_dx) fail("nested dx(...) is not supported");
      pos_ += 3;
      Poly inner{Monomial{1.0, {}}};
      inner = multiply(inner, factor(true));
      while (!at_end() && s_[pos_] == '*') {
        ++pos_;
        inner = multiply(inner, factor(true));
      }
      expect(')');
      return derivative(inner);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!at_end() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      int slot = -1;
      if (name == "u") slot = 0;
      else if (name == "ubar") slot = 1;
      else if (name == "ux") slot = 2;
      else if (name == "ubarx") slot = 3;
      else fail("unknown symbol '" + name + "'");
      if (inside_dx && slot >= 2) fail("dx(...) may only contain u, ubar and |u|^k");
      Monomial m{1.0, {}};
      m.powers[slot] = power();
      return {m};
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  // Product rule on monomials in u and ubar only.
  static Poly derivative(const Poly& p) {
    Poly out;
    for (const auto& m : p) {
      const int a = m.powers[0], b = m.powers[1];
      if (a > 0) out.push_back({m.coeff * double(a), {a - 1, b, 1, 0}});
      if (b > 0) out.push_back({m.coeff * double(b), {a, b - 1, 0, 1}});
    }
    return out;
  }
};

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_coeff(cplx c) {
  if (c.imag() == 0) return "(" + format_real(c.real()) + ")";
  std::string im = format_real(std::abs(c.imag())) + "i";
  return "(" + format_real(c.real()) + (c.imag() < 0 ? "-" : "+") + im + ")";
}

}  // namespace

int PolynomialSpec::d() const {
  int d = 0;
  for (const auto& m : monomials) d = d == 0 ? m.degree() : std::min(d, m.degree());
  return d;
}

int PolynomialSpec::l() const {
  int l = 0;
  for (const auto& m : monomials) l = std::max(l, m.degree());
  return l;
}

bool PolynomialSpec::one_derivative_per_term() const {
  return std::all_of(monomials.begin(), monomials.end(), [](const Monomial& m) { return m.derivatives() <= 1; });
}

std::string PolynomialSpec::to_string() const {
  if (monomials.empty()) return "0";
  static const char* names[4] = {"u", "ubar", "ux", "ubarx"};
  std::string out;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (i) out += " + ";
    out += format_coeff(monomials[i].coeff);
    for (int k = 0; k < 4; ++k)
      if (monomials[i].powers[k] > 0) out += std::string("*") + names[k] + "^" + std::to_string(monomials[i].powers[k]);
  }
  return out;
}

PolynomialSpec parse_polynomial(const std::string& text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.empty()) throw ParseError("malformed term '': empty polynomial");
  if (compact == "0") return {};

  // Split at top-level '+'/'-', skipping exponent signs such as 1e-3.
  std::vector<std::pair<double, std::string>> terms;
  int depth = 0;
  double sign = 1;
  std::string cur;
  for (std::size_t i = 0; i < compact.size(); ++i) {
    const char c = compact[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    const bool exponent_sign = i >= 2 && (compact[i - 1] == 'e' || compact[i - 1] == 'E') &&
                               std::isdigit(static_cast<unsigned char>(compact[i - 2]));
    if (depth == 0 && (c == '+' || c == '-') && !exponent_sign) {
      if (!cur.empty()) terms.emplace_back(sign, cur);
      else if (i != 0) throw ParseError("malformed term '" + compact.substr(0, i + 1) + "': dangling sign");
      cur.clear();
      sign = c == '-' ? -1 : 1;
      continue;
    }
    cur += c;
  }
  if (depth != 0) throw ParseError("malformed term '" + compact + "': unbalanced parentheses");
  if (cur.empty()) throw ParseError("malformed term '" + compact + "': trailing sign");
  terms.emplace_back(sign, cur);

  Poly all;
  for (const auto& [sg, t] : terms) {
    Poly p = TermParser(t).parse();
    for (auto& m : p) {
      if (m.degree() == 0) throw ParseError("malformed term '" + t + "': constant term");
      m.coeff *= sg;
      if (m.degree() < 3)
        throw DegreeError("term '" + t + "' has degree " + std::to_string(m.degree()) + " < 3");
      all.push_back(m);
    }
  }
  return {canonical(all)};
}

int dealias_factor(const PolynomialSpec& P) { return std::max(1, (P.l() + 2) / 2); }

namespace {

// Product of the monomials on a zero-padded copy of one slice.
Profile evaluate_slice(const PolynomialSpec& P, const Profile& u, double tol) {
  const int nx = u.nx();
  Profile out(u.box_length, nx);
  if (P.is_zero()) return out;
  const Profile h = fourier_x(u);
  const double cut = u.nyquist() / (P.l() + 1);
  double total = 0, beyond = 0;
  for (int k = 0; k < nx; ++k) {
    const double a = std::norm(h.values[k]);
    total += a;
    if (std::abs(h.xi(k)) > cut) beyond += a;
  }
  if (total > 0 && std::sqrt(beyond / total) > tol)
    throw DealiasError("insufficient padding headroom: relative spectral mass " + std::to_string(std::sqrt(beyond / total)) +
                       " above Nyquist/(l+1)");

  const int pad = dealias_factor(P);
  const int nf = nx * pad;
  Profile hu(u.box_length, nf), hux(u.box_length, nf);
  for (int k = 0; k < nx; ++k) {
    const int kf = (signed_index(k, nx) + nf) % nf;
    hu.values[kf] = h.values[k];
    hux.values[kf] = cplx(0, h.xi(k)) * h.values[k];
  }
  const Profile fu = inverse_fourier_x(hu), fux = inverse_fourier_x(hux);
  Profile prod(u.box_length, nf);
  for (int m = 0; m < nf; ++m) {
    const cplx z[4] = {fu.values[m], std::conj(fu.values[m]), fux.values[m], std::conj(fux.values[m])};
    cplx sum = 0;
    for (const auto& mono : P.monomials) {
      cplx term = mono.coeff;
      for (int s = 0; s < 4; ++s)
        for (int e = 0; e < mono.powers[s]; ++e) term *= z[s];
      sum += term;
    }
    prod.values[m] = sum;
  }
  const Profile hp = fourier_x(prod);
  Profile back(u.box_length, nx);
  for (int k = 0; k < nx; ++k) {
    if (k == nx / 2) continue;  // the lone Nyquist slot has no partner; drop it
    back.values[k] = hp.values[(signed_index(k, nx) + nf) % nf];
  }
  return inverse_fourier_x(back);
}

double boundary_fraction(const cplx* row, int nx) {
  const int edge = std::max(1, nx / 20);
  double inner = 0, outer = 0;
  for (int m = 0; m < nx; ++m) {
    const double a = std::norm(row[m]);
    if (m < edge || m >= nx - edge) outer += a;
    else inner += a;
  }
  const double tot = inner + outer;
  return tot > 0 ? outer / tot : 0.0;
}

void gauge_row(cplx* row, int nx, double dx, double k) {
  double acc = 0, prev = std::norm(row[0]);
  for (int m = 0; m < nx; ++m) {
    const double cur = std::norm(row[m]);
    if (m > 0) acc += 0.5 * dx * (prev + cur);
    prev = cur;
    row[m] *= std::polar(1.0, k * acc);
  }
}

void report_boundary(double frac, GaugeDiagnostics* diag) {
  const bool warn = frac > 1e-8;
  if (diag) {
    diag->boundary_mass_fraction = frac;
    diag->warned = warn;
  } else if (warn) {
    std::cerr << "warning: gauge_transform: boundary mass fraction " << frac
              << " exceeds 1e-8; the box is a poor model of the line\n";
  }
}

}  // namespace

Profile evaluate(const PolynomialSpec& P, const Profile& u, double tol) { return evaluate_slice(P, u, tol); }

SpaceTimeField evaluate(const PolynomialSpec& P, const SpaceTimeField& u, double tol) {
  SpaceTimeField out(u.grid);
  if (P.is_zero()) return out;
  for (int j = 0; j < u.grid.nt; ++j) out.set_slice(j, evaluate_slice(P, u.slice_profile(j), tol));
  return out;
}

SpaceTimeField gauge_transform(const SpaceTimeField& u, double k, GaugeDiagnostics* diag) {
  SpaceTimeField v = u;
  double worst = 0;
  for (int j = 0; j < u.grid.nt; ++j) {
    worst = std::max(worst, boundary_fraction(u.slice(j), u.grid.nx));
    gauge_row(v.slice(j), u.grid.nx, u.grid.dx(), k);
  }
  report_boundary(worst, diag);
  return v;
}

Profile gauge_transform(const Profile& u, double k, GaugeDiagnostics* diag) {
  Profile v = u;
  report_boundary(boundary_fraction(u.values.data(), u.nx()), diag);
  gauge_row(v.values.data(), v.nx(), v.dx(), k);
  return v;
}

TakaokaReport takaoka_report(const SpaceTimeField& u) {
  const SpaceTimeField v = gauge_transform(u, -1.0);
  const double nv = l2_norm(v);
  if (nv == 0) return {};
  const SpaceTimeField vx = dx(v);
  SpaceTimeField rhs(v.grid);
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const cplx a = v.values[i];
    rhs.values[i] = cplx(0, 1) * a * a * std::conj(vx.values[i]) + 0.5 * std::norm(a) * std::norm(a) * a;
  }
  const SpaceTimeField lhs = schrodinger_operator(v);
  return {l2_norm(lhs + rhs) / nv, l2_norm(rhs) / nv};
}

double takaoka_residual(const SpaceTimeField& u) { return takaoka_report(u).residual; }

namespace {

int dyadic_exponent(double lambda) {
  if (!is_dyadic(lambda)) throw ResampleError("rescale needs a power-of-two lambda");
  return static_cast<int>(std::lround(std::log2(lambda)));
}

// w(x_m) = u(lambda * x_m) on the same periodic axis.
Profile compress(const Profile& u, int e) {
  const int nx = u.nx();
  if (e == 0) return u;
  if (e > 0) {
    const long lam = 1L << e;
    // lambda*x_m is sample lam*m - (lam-1)*nx/2 of the original axis
    Profile h = fourier_x(u);
    double total = 0, beyond = 0;
    for (int k = 0; k < nx; ++k) {
      total += std::norm(h.values[k]);
      if (std::abs(h.xi(k)) * lam >= u.nyquist()) beyond += std::norm(h.values[k]);
    }
    if (total > 0 && std::sqrt(beyond / total) > 1e-8)
      throw ResampleError("rescale: compressed profile would exceed the Nyquist wavenumber");
    // Points whose image leaves the box stay zero: the periodic extension
    // would otherwise plant lambda copies of the compressed profile.
    Profile w(u.box_length, nx);
    for (int m = 0; m < nx; ++m) {
      const long idx = lam * m - (lam - 1) * (nx / 2);
      if (idx >= 0 && idx < nx) w.values[m] = u.values[idx];
    }
    return w;
  }
  // Stretching needs u on |x| < lambda*L/2 only; evaluate the band-limited
  // interpolant on a 2^{-e}-times finer copy of the axis.
  const int up = 1 << (-e);
  const int edge = nx / (2 * up);
  double inside = 0, outside = 0;
  for (int m = 0; m < nx; ++m) {
    const double a = std::norm(u.values[m]);
    if (std::abs(m - nx / 2) < edge) inside += a;
    else outside += a;
  }
  if (inside + outside > 0 && outside / (inside + outside) > 1e-8)
    throw ResampleError("rescale: lambda times the support does not fit the box");
  const Profile h = fourier_x(u);
  const int nf = nx * up;
  Profile hf(u.box_length, nf);
  for (int k = 0; k < nx; ++k)
    if (k != nx / 2) hf.values[(signed_index(k, nx) + nf) % nf] = h.values[k];
  const Profile fine = inverse_fourier_x(hf);
  // lambda*x_m sits at fine index m + (up-1)*nx/2
  Profile w(u.box_length, nx);
  for (int m = 0; m < nx; ++m) {
    const long idx = static_cast<long>(m) + static_cast<long>(up - 1) * nx / 2;
    w.values[m] = fine.values[idx % nf];
  }
  return w;
}

}  // namespace

Profile rescale(const Profile& u, double lambda, int d) {
  if (d < 2) throw DomainError("rescale needs d >= 2");
  const int e = dyadic_exponent(lambda);
  Profile w = compress(u, e);
  const double amp = std::pow(lambda, 1.0 / (d - 1));
  for (auto& v : w.values) v *= amp;
  return w;
}

SpaceTimeField rescale(const SpaceTimeField& u, double lambda, int d) {
  if (d < 2) throw DomainError("rescale needs d >= 2");
  const int e = dyadic_exponent(lambda);
  GridSpec g = u.grid;
  g.t_min /= lambda * lambda;
  g.t_max /= lambda * lambda;
  SpaceTimeField out(g);
  const double amp = std::pow(lambda, 1.0 / (d - 1));
  for (int j = 0; j < g.nt; ++j) {
    Profile w = compress(u.slice_profile(j), e);
    for (auto& v : w.values) v *= amp;
    out.set_slice(j, w);
  }
  return out;
}

}  // namespace gdnls
