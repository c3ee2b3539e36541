#pragma once

// Radial sweeps over K-type expansions: asymptotics of Phi_m, growth of the
// kernel's L^1 norm, weighted Hardy norms and the L^2 inversion.

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matball/boundary.hpp"
#include "matball/errors.hpp"
#include "matball/numeric.hpp"
#include "matball/special.hpp"
#include "matball/spherical.hpp"

namespace matball {

/// Finite K-type sum f = sum_m coeffs[m] phi_m on U(n).
struct KTypeFunction {
  int n = 1;
  std::map<Signature, cplx> coeffs;

  KTypeFunction() = default;
  explicit KTypeFunction(int rank) : n(rank) {}

  KTypeFunction& add(const Signature& m, cplx c) {
    if (m.rank() != n) throw DomainError("K-type function: signature rank mismatch");
    coeffs[m] += c;
    return *this;
  }

  static KTypeFunction single(const Signature& m, cplx c = 1.0) { return KTypeFunction(m.rank()).add(m, c); }

  int max_part() const {
    int M = 0;
    for (const auto& [m, c] : coeffs)
      for (int v : m.parts) M = std::max(M, std::abs(v));
    return M;
  }

  cplx operator()(const TorusAngles& t) const {
    cplx v = 0.0;
    for (const auto& [m, c] : coeffs) v += c * schur_character(m, t);
    return v;
  }

  /// ||f||_2^2 = sum |c_m|^2 / d_m^2 (orthonormality of characters).
  double l2_norm_squared_exact() const {
    double s = 0.0;
    for (const auto& [m, c] : coeffs) {
      const double d = static_cast<double>(weyl_dimension(m));
      s += std::norm(c) / (d * d);
    }
    return s;
  }

  std::string str() const {
    std::ostringstream os;
    os.precision(6);
    bool first = true;
    for (const auto& [m, c] : coeffs) {
      os << (first ? "" : " + ") << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)phi"
         << m.str();
      first = false;
    }
    return first ? "0" : os.str();
  }
};

/// One (label, r) cell of a sweep.
struct SweepRow {
  std::string label;
  double r = 0.0;
  cplx value;
  cplx reference;
  cplx ratio;
};

struct SweepResult {
  std::string name;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<SweepRow> rows;
  std::vector<std::string> findings;
  bool pass = false;

  void note(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
};

/// Default geometric radius grid 1 - 2^{-j}, j = 1..14.
inline std::vector<double> default_radii() {
  std::vector<double> r;
  for (int j = 1; j <= 14; ++j) r.push_back(1.0 - std::ldexp(1.0, -j));
  return r;
}

inline void require_increasing(const std::vector<double>& radii) {
  if (radii.empty()) throw DomainError("radius list is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0 && radii[i] < 1.0)) throw DomainError("radii must lie in [0, 1)");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("radii must be strictly increasing");
  }
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline std::string format_radii(const std::vector<double>& radii) {
  std::string s;
  for (std::size_t i = 0; i < radii.size(); ++i) s += (i ? ";" : "") + format_double(radii[i]);
  return s;
}

inline void require_asymptotic(const SpectralParams& p) {
  if (!p.in_generic_set()) throw DomainError("s lies in the excluded lattice n - 2 +/- nu - 2k");
  if (!p.in_asymptotic_range()) throw DomainError("requires Re(s) > n - 1");
}

/// Roundoff floor of |ratio - 1|: the long double determinant of Phi_m cancels by (1 - r^2)^{n(n-1)}.
inline double key_lemma_noise_floor(int n, double r) {
  return 1e-16 / std::pow(one_minus_r2(r), n * (n - 1));
}

/// Table of key_lemma_ratio over signatures and radii.
/// Pass: every |ratio(r_max) - 1| <= 5e-2; per-signature deviations non-increasing in r
/// (up to the roundoff floor); D(r) = max_m |ratio - 1| is non-increasing and decays at
/// least at the first-order rate between the last two radii (within a factor 2).
inline SweepResult key_lemma_sweep(const SpectralParams& p, const std::vector<Signature>& sigs,
                                   const std::vector<double>& radii) {
  require_asymptotic(p);
  require_increasing(radii);
  if (radii.front() < 0.9) throw DomainError("key_lemma_sweep: radii must lie in [0.9, 1)");
  SweepResult out;
  out.name = "key_lemma";
  out.note("params", p.describe());
  out.note("radii", format_radii(radii));
  out.note("signatures", std::to_string(sigs.size()));
  const cplx c = c_function(p);
  const cplx e = static_cast<double>(p.n) * (static_cast<double>(p.n - p.nu) - p.s) / 2.0;
  std::vector<double> D(radii.size(), 0.0);
  bool ok = true;
  for (const auto& m : sigs) {
    double prev = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double r = radii[k];
      const cplx phi = phi_big(p, m, r);
      const cplx ref = c * real_pow(one_minus_r2(r), e);
      const cplx ratio = phi / ref;
      out.rows.push_back({m.str(), r, phi, ref, ratio});
      const double dev = std::abs(ratio - 1.0);
      D[k] = std::max(D[k], dev);
      if (k > 0 && dev > prev + key_lemma_noise_floor(p.n, r)) {
        ok = false;
        out.findings.push_back("deviation grew for " + m.str() + " at r=" + format_double(r));
      }
      prev = dev;
    }
    if (prev > 5e-2) {
      ok = false;
      out.findings.push_back("|ratio-1| > 5e-2 at r_max for " + m.str());
    }
  }
  for (std::size_t k = 1; k < radii.size(); ++k)
    if (D[k] > D[k - 1] + key_lemma_noise_floor(p.n, radii[k])) ok = false;
  if (radii.size() >= 2) {
    const std::size_t a = radii.size() - 2, b = radii.size() - 1;
    const double rate = (1.0 - radii[b] * radii[b]) / (1.0 - radii[a] * radii[a]);
    const double bound = 2.0 * D[a] * rate + key_lemma_noise_floor(p.n, radii[b]);
    out.note("uniform_max_deviation_at_r_max", format_double(D[b]));
    out.note("uniformity_bound", format_double(bound));
    if (D[b] > bound) {
      ok = false;
      out.findings.push_back("max deviation does not decay at the first-order rate");
    }
  }
  out.pass = ok;
  return out;
}

/// Weyl quadrature of prod_i |P_1(r, theta_i)|, the L^1 norm of P(rI, .) on U(n).
inline double kernel_l1_norm(const SpectralParams& p, double r, const TorusGrid& grid) {
  check_resolution(r, grid);
  const int N = grid.points_per_dim;
  std::vector<cplx> w(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) w[static_cast<std::size_t>(j)] = std::abs(kernel_factor(p, r, grid.node(j)));
  std::vector<int> rho(static_cast<std::size_t>(p.n));
  for (int j = 0; j < p.n; ++j) rho[static_cast<std::size_t>(j)] = p.n - 1 - j;
  return detail::torus_pairing(w, rho, rho, grid).real();
}

/// Rows (r, int |P(rI,U)| dU, (1 - r^2)^{n(n-nu-Re s)/2}, ratio); pass if max/min ratio <= 10.
/// The grid per radius is max(base_grid, 16/(1 - r)) for r >= 0.9.
inline SweepResult forelli_rudin_growth(const SpectralParams& p, const std::vector<double>& radii, int base_grid = 64) {
  if (!p.in_asymptotic_range()) throw DomainError("forelli_rudin_growth: requires Re(s) > n - 1");
  require_increasing(radii);
  SweepResult out;
  out.name = "forelli_rudin";
  out.note("params", p.describe());
  out.note("radii", format_radii(radii));
  out.note("base_grid", std::to_string(base_grid));
  double lo = INFINITY, hi = 0.0;
  for (double r : radii) {
    const TorusGrid g = grid_for_radius(r, base_grid);
    const double l1 = kernel_l1_norm(p, r, g);
    const double ref = std::pow(1.0 - r * r, p.weight_exponent());
    const double ratio = l1 / ref;
    out.rows.push_back({"N=" + std::to_string(g.points_per_dim), r, l1, ref, ratio});
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  out.note("band", format_double(hi / lo));
  out.pass = lo > 0.0 && hi / lo <= 10.0;
  return out;
}

/// Grid resolving |f|^p for a K-type sum with parts bounded by M.
inline TorusGrid ktype_grid(const KTypeFunction& f) { return TorusGrid(std::max(32, 8 * f.max_part() + 4 * f.n + 8)); }

/// ||f||_p on U(n) by Weyl quadrature of |f|^p.
inline double lp_norm(const KTypeFunction& f, double pexp, const TorusGrid& grid) {
  const cplx v = weyl_integrate([&](const TorusAngles& t) { return cplx(std::pow(std::abs(f(t)), pexp), 0.0); }, grid, f.n);
  return std::pow(std::max(v.real(), 0.0), 1.0 / pexp);
}

/// Poisson transform of a K-type sum at radius r, as a function of the torus angles.
struct PoissonSlice {
  std::vector<std::pair<Signature, cplx>> terms;  // coefficient already multiplied by Phi_m(r)
  cplx operator()(double, const TorusAngles& t) const {
    cplx v = 0.0;
    for (const auto& [m, c] : terms) v += c * schur_character(m, t);
    return v;
  }
};

inline PoissonSlice poisson_slice(const SpectralParams& p, const KTypeFunction& f, double r) {
  PoissonSlice s;
  for (const auto& [m, c] : f.coeffs) s.terms.emplace_back(m, c * phi_big(p, m, r));
  return s;
}

/// Per radius: value = weighted Hardy norm of P f at r, reference = |c_nu| ||f||_p,
/// ratio = value / ||f||_p. Pass: |c_nu| ||f||_p <= (1 + 1e-3) max_r value.
inline SweepResult norm_sandwich(const SpectralParams& p, const KTypeFunction& f, double pexp,
                                 const std::vector<double>& radii) {
  require_asymptotic(p);
  require_increasing(radii);
  if (f.n != p.n) throw DomainError("norm_sandwich: rank mismatch");
  SweepResult out;
  out.name = "norm_sandwich";
  const TorusGrid grid = ktype_grid(f);
  out.note("params", p.describe());
  out.note("f", f.str());
  out.note("p", format_double(pexp));
  out.note("radii", format_radii(radii));
  out.note("grid", std::to_string(grid.points_per_dim));
  const double fnorm = lp_norm(f, pexp, grid);
  const double cabs = std::abs(c_function(p));
  double sup = 0.0;
  for (double r : radii) {
    const PoissonSlice F = poisson_slice(p, f, r);
    const double h = hardy_norm(p, F, pexp, r, grid);
    sup = std::max(sup, h);
    out.rows.push_back({"hardy", r, h, cabs * fnorm, fnorm > 0.0 ? h / fnorm : 0.0});
  }
  out.note("f_norm", format_double(fnorm));
  out.note("abs_c", format_double(cabs));
  out.note("hardy_sup", format_double(sup));
  out.note("upper_ratio", format_double(fnorm > 0.0 ? sup / fnorm : 0.0));
  out.pass = cabs * fnorm <= (1.0 + 1e-3) * sup;
  return out;
}

/// ||g_r - f||_2 with g_r's coefficients |c|^{-2} (1-r^2)^{-n(n-nu-Re s)} |Phi_m(r)|^2 coeffs[m].
/// Pass: non-increasing along the radii and <= 1e-2 ||f||_2 at the last radius.
inline SweepResult inversion_experiment(const SpectralParams& p, const KTypeFunction& f, const std::vector<double>& radii) {
  require_asymptotic(p);
  require_increasing(radii);
  SweepResult out;
  out.name = "inversion";
  out.note("params", p.describe());
  out.note("f", f.str());
  out.note("radii", format_radii(radii));
  const double c2 = std::norm(c_function(p));
  const double fnorm = std::sqrt(f.l2_norm_squared_exact());
  double prev = INFINITY;
  bool ok = true;
  for (double r : radii) {
    double err2 = 0.0;
    for (const auto& [m, c] : f.coeffs) {
      const double kappa = std::norm(phi_big(p, m, r)) / (c2 * std::pow(1.0 - r * r, 2.0 * p.weight_exponent()));
      const double d = static_cast<double>(weyl_dimension(m));
      err2 += (kappa - 1.0) * (kappa - 1.0) * std::norm(c) / (d * d);
    }
    const double err = std::sqrt(err2);
    out.rows.push_back({"error", r, err, fnorm, fnorm > 0.0 ? err / fnorm : 0.0});
    if (err > prev * (1.0 + 1e-9) + 1e-15) ok = false;
    prev = err;
  }
  out.note("f_norm", format_double(fnorm));
  out.pass = ok && prev <= 1e-2 * fnorm + 1e-15;
  return out;
}

/// Poisson transform of f at Z = r diag(e^{i theta}): the K-type expansion
/// sum_m coeffs[m] Phi_m(r) phi_m(theta) against direct quadrature of the kernel.
/// n = 1: trapezoidal quadrature of P(r e^{i theta}, e^{i t}) f(e^{i t}) with grid doubling.
/// n >= 2: P(r V, U) = P(r I, V* U) and the functional equation of phi_m reduce the
/// integral to sum_m coeffs[m] phi_m(V) int P(rI, W) phi_m(W) dW (Weyl quadrature).
inline CheckReport eigen_expansion_check(const SpectralParams& p, const KTypeFunction& f, RadialArg r,
                                         const TorusAngles& theta, int start_grid = 32, double tolerance = 1e-6) {
  if (f.n != p.n || theta.rank() != p.n) throw DomainError("eigen_expansion_check: rank mismatch");
  cplx expansion = 0.0;
  for (const auto& [m, c] : f.coeffs) expansion += c * phi_big(p, m, r) * schur_character(m, theta);
  cplx direct = 0.0;
  if (p.n == 1) {
    const BallPoint Z(CMatrix::Constant(1, 1, r.r * std::polar(1.0, theta.theta[0])));
    auto eval = [&](const TorusGrid& g) {
      PairwiseSum<cplx> acc;
      for (int j = 0; j < g.points_per_dim; ++j) {
        const TorusAngles u({g.node(j)});
        acc.add(poisson_kernel(p, Z, u) * f(u));
      }
      return acc.result() / static_cast<double>(g.points_per_dim);
    };
    direct = refine_by_doubling(eval, std::max(start_grid, required_grid(r.r)), 1 << 16).value;
  } else {
    for (const auto& [m, c] : f.coeffs)
      direct += c * schur_character(m, theta) * refine_spherical_oracle(p, m, r, start_grid).value;
  }
  return make_report("eigen_expansion " + p.describe() + " f=" + f.str(), expansion, direct, tolerance);
}

}  // namespace matball
