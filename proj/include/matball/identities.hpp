#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matball/errors.hpp"
#include "matball/numeric.hpp"
#include "matball/special.hpp"
#include "matball/spherical.hpp"

namespace matball {

/// Exclusion radius around forbidden parameter points.
inline constexpr double kGuardRadius = 1e-6;

/// n, alpha, beta and the n-tuple p entering the hypergeometric determinants.
struct AppendixParams {
  int n = 1;
  cplx alpha;
  cplx beta;
  std::vector<cplx> p;

  static void guard_point(cplx z, int lo, int hi, const char* what) {
    for (int k = lo; k <= hi; ++k) {
      if (std::abs(z - static_cast<double>(1 - k)) < kGuardRadius) {
        std::ostringstream os;
        os << what << " = " << z << " is within " << kGuardRadius << " of the excluded point " << (1 - k);
        throw GuardError(os.str());
      }
    }
  }

  void check_shape() const {
    if (n < 1 || static_cast<int>(p.size()) != n) throw DomainError("appendix parameters: p must have n entries");
  }

  void check_distinct() const {
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        if (std::abs(p[i] - p[j]) < 1e-8) throw CoincidentError("p entries must be pairwise distinct (gap >= 1e-8)");
  }

  /// alpha, alpha + beta avoid {1 - k : 1 <= k <= n - 1}.
  void check_lemma_a() const {
    check_shape();
    guard_point(alpha, 1, n - 1, "alpha");
    guard_point(alpha + beta, 1, n - 1, "alpha + beta");
  }

  /// beta avoids {1 - k : 1 <= k <= n - 1}; alpha + beta avoids {1 - k : 1 <= k <= 2(n - 1)}.
  void check_lemma_b() const {
    check_shape();
    guard_point(beta, 1, n - 1, "beta");
    guard_point(alpha + beta, 1, 2 * (n - 1), "alpha + beta");
    check_distinct();
  }
};

struct DeterminantSides {
  cplx lhs;
  cplx rhs;
};

/// (-1)^{n(n-1)/2} (1 - r^2)^{n(n-1)/2}
inline cplx lemma_a_prefactor_statement(int n, double r) {
  const long long e = static_cast<long long>(n) * (n - 1) / 2;
  return sign_power(e) * std::pow(1.0 - r * r, static_cast<double>(e));
}

/// (r^2 - 1)^{n(n-1)/2}
inline cplx lemma_a_prefactor_proof(int n, double r) { return ipow(cplx(r * r - 1.0, 0.0), n * (n - 1) / 2); }

/// Extended-precision scalar for the hypergeometric determinants: both sides of the
/// identities cancel down by (1 - r^2)^{n(n-1)/2} from O(1) entries.
using xreal = long double;
using xcplx = std::complex<xreal>;
using XMatrix = Eigen::Matrix<xcplx, Eigen::Dynamic, Eigen::Dynamic>;

inline xcplx widen(cplx z) { return {z.real(), z.imag()}; }
inline cplx narrow(xcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

/// det(2F1(alpha + n - j, beta + p_i + n; alpha + beta + n - j; x))_{i,j}, j = 1..n.
inline xcplx shifted_hyp_determinant(const AppendixParams& ap, xreal x) {
  const int n = ap.n;
  const xcplx al = widen(ap.alpha), be = widen(ap.beta);
  XMatrix R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= n; ++j)
      R(i, j - 1) = gauss_2f1<xreal>({al + xreal(n - j), be + widen(ap.p[static_cast<std::size_t>(i)]) + xreal(n),
                                      al + be + xreal(n - j), x});
  return determinant(R);
}

/// lhs = det(2F1(alpha, beta + p_i + j; alpha + beta; 1 - r^2)),
/// rhs = (-1)^{n(n-1)/2} (1-r^2)^{n(n-1)/2} prod_k [(alpha+k-1)/(alpha+beta+k-1)]^{n-k} det(shifted).
inline DeterminantSides lemma_a_sides(const AppendixParams& ap, RadialArg r) {
  ap.check_lemma_a();
  const int n = ap.n;
  const xreal rr = r.r;
  const xreal x = 1.0L - rr * rr;
  const xcplx al = widen(ap.alpha), be = widen(ap.beta);
  XMatrix L(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= n; ++j)
      L(i, j - 1) = gauss_2f1<xreal>({al, be + widen(ap.p[static_cast<std::size_t>(i)]) + xreal(j), al + be, x});
  const long long e = static_cast<long long>(n) * (n - 1) / 2;
  xcplx pre = static_cast<xreal>(sign_power(e)) * std::pow(x, static_cast<xreal>(e));
  for (int k = 1; k <= n - 1; ++k) pre *= ipow((al + xreal(k - 1)) / (al + be + xreal(k - 1)), n - k);
  return {narrow(determinant(L)), narrow(pre * shifted_hyp_determinant(ap, x))};
}

/// d_p = prod_{i<j} (p_i - p_j)/(j - i).
inline cplx dp_factor(const std::vector<cplx>& p) {
  const int n = static_cast<int>(p.size());
  cplx v = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cplx d = p[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(j)];
      if (std::abs(d) < 1e-8) throw CoincidentError("dp_factor: p entries must be pairwise distinct");
      v *= d / static_cast<double>(j - i);
    }
  return v;
}

/// Overall sign convention of the asymptotic constant.
/// resolved: +1 (numerically matching); printed: (-1)^{(n^2+3n-8)/2}.
enum class LemmaBSign { resolved, printed };

/// (n^2 + 3n - 8)/2; n(n+3) is always even, so the exponent is an integer.
inline long long lemma_b_sign_exponent(int n) {
  const long long num = static_cast<long long>(n) * n + 3LL * n - 8;
  if (num % 2 != 0) throw DomainError("lemma_b_sign_exponent: exponent is not an integer");
  return num / 2;
}

/// sign * prod (n-k)! * x^{n(n-1)/2} * prod_k (beta+k-1)^{n-k} / prod_{j=1}^{n-k} (alpha+beta+n+k-j-2)_2
inline xcplx lemma_b_constant(const AppendixParams& ap, xreal x, LemmaBSign sign) {
  const int n = ap.n;
  const xcplx al = widen(ap.alpha), be = widen(ap.beta);
  xcplx c = sign == LemmaBSign::printed ? static_cast<xreal>(sign_power(lemma_b_sign_exponent(n))) : 1.0L;
  for (int k = 1; k <= n - 1; ++k) c *= static_cast<xreal>(factorial(n - k));
  c *= std::pow(x, static_cast<xreal>(n * (n - 1) / 2));
  for (int k = 1; k <= n - 1; ++k) {
    xcplx den = 1.0L;
    for (int j = 1; j <= n - k; ++j) den *= pochhammer<xreal>(al + be + xreal(n + k - j - 2), 2);
    c *= ipow(be + xreal(k - 1), n - k) / den;
  }
  return c;
}

/// [det(shifted) / d_p] / constant; tends to 1 as r -> 1 with the resolved sign.
inline cplx lemma_b_ratio(const AppendixParams& ap, RadialArg r, LemmaBSign sign = LemmaBSign::resolved) {
  ap.check_lemma_b();
  const xreal rr = r.r;
  const xreal x = 1.0L - rr * rr;
  return narrow(shifted_hyp_determinant(ap, x) / widen(dp_factor(ap.p)) / lemma_b_constant(ap, x, sign));
}

/// prod_{k=1}^{n-1} (a-k)^{n-k} against prod_{k=1}^{n-1} (a-k)_k.
inline CheckReport pochhammer_product_check(cplx a, int n, double tolerance = 1e-11) {
  cplx lhs = 1.0, rhs = 1.0;
  for (int k = 1; k <= n - 1; ++k) {
    lhs *= ipow(a - static_cast<double>(k), n - k);
    rhs *= pochhammer(a - static_cast<double>(k), k);
  }
  std::ostringstream name;
  name << "pochhammer_product n=" << n;
  return make_report(name.str(), lhs, rhs, tolerance);
}

/// (s)_{n-1} prod_{k=1}^{n-1} (s-k)_{n-1} / [(s-k+1)_{n-k} (s-k)_{n-k}], expected 1.
inline CheckReport induction_identity_check(cplx s, int n, double tolerance = 1e-10) {
  for (int k = 1; k <= n - 1; ++k) {
    for (int i = 0; i < n - k; ++i) {
      for (double root : {static_cast<double>(k - 1 - i), static_cast<double>(k - i)}) {
        if (std::abs(s - root) < kGuardRadius) {
          std::ostringstream os;
          os << "induction identity: s = " << s << " is within " << kGuardRadius << " of a denominator zero " << root;
          throw GuardError(os.str());
        }
      }
    }
  }
  cplx v = pochhammer(s, n - 1);
  for (int k = 1; k <= n - 1; ++k) {
    const double kd = k;
    v *= pochhammer(s - kd, n - 1) / (pochhammer(s - kd + 1.0, n - k) * pochhammer(s - kd, n - k));
  }
  std::ostringstream name;
  name << "induction_identity n=" << n;
  return make_report(name.str(), v, 1.0, tolerance);
}

/// (Gamma(s+n-1) / (Gamma(a+) Gamma(a-)))^n gamma(lambda, nu) against c_nu(lambda).
inline CheckReport e9_identity_check(const SpectralParams& p, double tolerance = 1e-9) {
  const cplx base = gamma(p.s + static_cast<double>(p.n - 1)) * recip_gamma(p.alpha_plus()) * recip_gamma(p.alpha_minus());
  const cplx lhs = ipow(base, p.n) * gamma_constant(p);
  const cplx rhs = c_function(p);
  return make_report("e9 " + p.describe(), lhs, rhs, tolerance);
}

/// Uniform complex draw with real part in [re_lo, re_hi] and imaginary part in [-im, im].
inline cplx draw_complex(std::mt19937_64& rng, double re_lo, double re_hi, double im) {
  std::uniform_real_distribution<double> ur(re_lo, re_hi), ui(-im, im);
  const double a = ur(rng);
  return {a, ui(rng)};
}

/// Minimum pairwise separation of p in random draws; clustered p make both determinants
/// nearly singular and the comparison then measures conditioning, not the identity.
inline constexpr double kDrawSeparation = 0.3;

/// Seeded random parameters satisfying both the Lemma A and Lemma B guards.
inline AppendixParams draw_appendix_params(int n, std::mt19937_64& rng) {
  while (true) {
    AppendixParams ap;
    ap.n = n;
    ap.alpha = draw_complex(rng, 0.2, 2.0, 1.0);
    ap.beta = draw_complex(rng, 0.2, 2.0, 1.0);
    for (int i = 0; i < n; ++i) ap.p.push_back(draw_complex(rng, -2.0, 2.0, 0.5));
    try {
      ap.check_lemma_a();
      ap.check_lemma_b();
      bool separated = true;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          separated = separated && std::abs(ap.p[static_cast<std::size_t>(i)] - ap.p[static_cast<std::size_t>(j)]) >= kDrawSeparation;
      if (separated) return ap;
    } catch (const NumericalError&) {
    }
  }
}

}  // namespace matball
