#pragma once

// Complex special functions: Gamma, Pochhammer, Gauss 2F1 on [0,1), the
// Gindikin Gamma function of the cone of positive Hermitian matrices and the
// c-function c_nu(lambda).
//
// The Gamma/2F1 core is templated on the real type T (double or long double).
// Unqualified calls with std::complex<double> arguments resolve to the double
// overloads below.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>

#include "matball/errors.hpp"
#include "matball/numeric.hpp"

namespace matball {

/// Rank n, line-bundle weight nu and the spectral variable s = i*lambda.
/// Every formula in the library consumes s directly, never lambda.
struct SpectralParams {
  int n = 1;
  int nu = 0;
  cplx s{1.0, 0.0};

  /// (s + n - nu) / 2
  cplx alpha_minus() const { return (s + static_cast<double>(n - nu)) / 2.0; }
  /// (s + n + nu) / 2
  cplx alpha_plus() const { return (s + static_cast<double>(n + nu)) / 2.0; }

  /// s avoids the lattices n - 2 +/- nu - 2k, k >= 1 (tolerance 1e-12).
  bool in_generic_set() const {
    for (int sign : {+1, -1}) {
      const cplx shifted = s - static_cast<double>(n - 2 + sign * nu);
      if (std::abs(shifted.imag()) > 1e-12) continue;
      const double k = std::round(shifted.real());
      if (std::abs(shifted.real() - k) <= 1e-12 && k <= -2.0 && std::fmod(-k, 2.0) == 0.0) return false;
    }
    return true;
  }

  /// Re s > n - 1.
  bool in_asymptotic_range() const { return s.real() > n - 1; }

  /// n(n - nu - Re s)/2: exponent of (1 - r^2) in the weighted Hardy norm.
  double weight_exponent() const { return n * (n - nu - s.real()) / 2.0; }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << n << " nu=" << nu << " s=" << s.real() << (s.imag() < 0 ? "-" : "+") << std::abs(s.imag()) << "i";
    return os.str();
  }
};

namespace detail {

// Lanczos approximation, g = 7, nine terms (Godfrey's coefficients). Relative
// error below 3e-13 on |z| <= 50 once combined with reflection.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2k} / (2k (2k - 1)), k = 1..10, for the Stirling series of log Gamma.
inline constexpr std::array<long double, 10> kStirlingCoeffs = {
    1.0L / 12.0L,          -1.0L / 360.0L,       1.0L / 1260.0L,        -1.0L / 1680.0L,
    1.0L / 1188.0L,        -691.0L / 360360.0L,  1.0L / 156.0L,         -3617.0L / 122400.0L,
    43867.0L / 244188.0L,  -174611.0L / 125400.0L};

/// Real part at which the Stirling series is summed.
inline constexpr long double kStirlingShift = 24.0L;

template <class T>
constexpr T pi_v() {
  return std::numbers::pi_v<T>;
}

/// sin(pi z) with the argument reduced to |Re| <= 1/2 first, so large
/// negative z near an integer keeps full relative accuracy.
template <class T>
std::complex<T> sin_pi(std::complex<T> z) {
  const T k = std::round(z.real());
  const std::complex<T> w = z - k;
  const std::complex<T> v = std::sin(pi_v<T>() * w);
  return std::fmod(std::abs(k), T(2)) == T(1) ? -v : v;
}

/// Gamma on Re z >= 1/2 by the Lanczos series.
inline cplx gamma_lanczos(cplx z) {
  z -= 1.0;
  cplx series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) series += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return std::sqrt(kTwoPi) * std::exp((z + 0.5) * std::log(t) - t) * series;
}

/// Gamma on Re z >= 1/2: upward recurrence to Re >= 24, then the Stirling series.
template <class T>
std::complex<T> gamma_stirling(std::complex<T> z) {
  std::complex<T> shift{1, 0};
  while (z.real() < T(kStirlingShift)) {
    shift *= z;
    z += T(1);
  }
  const std::complex<T> inv = T(1) / z;
  const std::complex<T> inv2 = inv * inv;
  std::complex<T> corr{0, 0};
  std::complex<T> pw = inv;
  for (long double c : kStirlingCoeffs) {
    corr += T(c) * pw;
    pw *= inv2;
  }
  const T half_log_2pi = T(0.5) * std::log(T(2) * pi_v<T>());
  return std::exp((z - T(0.5)) * std::log(z) - z + half_log_2pi + corr) / shift;
}

template <class T>
std::complex<T> gamma_right(std::complex<T> z) {
  if constexpr (std::is_same_v<T, double>) {
    return gamma_lanczos(z);
  } else {
    return gamma_stirling<T>(z);
  }
}

}  // namespace detail

/// Complex Gamma function (reflection for Re z < 1/2).
template <class T>
std::complex<T> gamma(std::complex<T> z) {
  if (is_near_nonpositive_integer(z, 1e-12)) {
    std::ostringstream os;
    os << "gamma: pole at z = " << std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    throw PoleError(os.str());
  }
  if (z.real() < T(0.5)) return detail::pi_v<T>() / (detail::sin_pi(z) * detail::gamma_right<T>(T(1) - z));
  return detail::gamma_right<T>(z);
}

inline cplx gamma(cplx z) { return gamma<double>(z); }

/// 1/Gamma(z); entire, exactly zero at the non-positive integers.
template <class T>
std::complex<T> recip_gamma(std::complex<T> z) {
  if (z.real() < T(0.5)) {
    if (z.imag() == T(0) && z.real() == std::round(z.real())) return T(0);
    return detail::sin_pi(z) * detail::gamma_right<T>(T(1) - z) / detail::pi_v<T>();
  }
  return T(1) / detail::gamma_right<T>(z);
}

inline cplx recip_gamma(cplx z) { return recip_gamma<double>(z); }

/// Rising factorial (a)_k = a(a+1)...(a+k-1), (a)_0 = 1.
template <class T>
std::complex<T> pochhammer(std::complex<T> a, int k) {
  if (k < 0) throw DomainError("pochhammer: negative length");
  std::complex<T> p{1, 0};
  for (int j = 0; j < k; ++j) p *= a + T(j);
  return p;
}

inline cplx pochhammer(cplx a, int k) { return pochhammer<double>(a, k); }

/// (a)_k / k!, accumulated factor by factor so large k cannot overflow early.
template <class T>
std::complex<T> pochhammer_over_factorial(std::complex<T> a, int k) {
  std::complex<T> p{1, 0};
  for (int j = 0; j < k; ++j) p *= (a + T(j)) / T(j + 1);
  return p;
}

inline cplx pochhammer_over_factorial(cplx a, int k) { return pochhammer_over_factorial<double>(a, k); }

/// Arguments of 2F1(a, b; c; x) with x restricted to [0, 1).
template <class T>
struct Hyp2F1ArgsT {
  std::complex<T> a;
  std::complex<T> b;
  std::complex<T> c;
  T x = 0;

  void validate() const {
    if (!(x >= T(0) && x < T(1))) throw DomainError("gauss_2f1: x must lie in [0, 1)");
    if (is_near_nonpositive_integer(c, 1e-12)) {
      std::ostringstream os;
      os << "gauss_2f1: c = " << std::complex<double>(static_cast<double>(c.real()), static_cast<double>(c.imag()))
         << " is a non-positive integer";
      throw PoleError(os.str());
    }
  }
};

using Hyp2F1Args = Hyp2F1ArgsT<double>;

/// Result of a direct power-series summation.
template <class T>
struct SeriesSum {
  std::complex<T> value;
  std::int64_t terms = 0;
  bool converged = false;
};

/// c - a - b closer than this to an integer sends x > 1/2 to the series fallback;
/// the two connection terms cancel with relative loss ~ eps / gap.
inline constexpr double kDegenerateGap = 1e-5;

/// Iteration budget of the direct series when the connection formula is unusable.
inline constexpr std::int64_t kExtendedSeriesBudget = 50'000'000;

/// Direct hypergeometric series sum_k (a)_k (b)_k / ((c)_k k!) x^k, stopped when the
/// geometric tail bound falls below eps/10 of the partial sum (or the series terminates).
template <class T>
SeriesSum<T> hyp2f1_series(std::complex<T> a, std::complex<T> b, std::complex<T> c, T x, std::int64_t max_terms) {
  using C = std::complex<T>;
  const T stop = std::numeric_limits<T>::epsilon() / T(10);
  CompensatedSum<C> sum;
  sum.add(C(1));
  C term{1, 0};
  SeriesSum<T> out;
  int quiet = 0;
  for (std::int64_t k = 0; k < max_terms; ++k) {
    const T kd = static_cast<T>(k);
    const C factor = (a + kd) * (b + kd) / ((c + kd) * (kd + T(1)));
    term *= factor * x;
    sum.add(term);
    if (term == C(0)) {
      out.terms = k + 1;
      out.converged = true;
      out.value = sum.value();
      return out;
    }
    const T ratio = std::abs(factor) * x;
    if (ratio < T(1)) {
      const T tail = std::abs(term) * ratio / (T(1) - ratio);
      if (tail <= stop * std::abs(sum.value())) {
        if (++quiet >= 2) {
          out.terms = k + 1;
          out.converged = true;
          out.value = sum.value();
          return out;
        }
      } else {
        quiet = 0;
      }
    }
  }
  out.terms = max_terms;
  out.converged = false;
  out.value = sum.value();
  return out;
}

inline SeriesSum<double> hyp2f1_series(cplx a, cplx b, cplx c, double x, std::int64_t max_terms) {
  return hyp2f1_series<double>(a, b, c, x, max_terms);
}

/// Evaluation of 2F1 for x > 1/2 through the z -> 1 - z connection formula
///   F(a,b;c;x) = G(c)G(c-a-b)/(G(c-a)G(c-b)) F(a,b;a+b-c+1;1-x)
///              + G(c)G(a+b-c)/(G(a)G(b)) (1-x)^(c-a-b) F(c-a,c-b;c-a-b+1;1-x).
/// Both sub-series run at argument 1 - x.
template <class T>
std::complex<T> hyp2f1_connection(const Hyp2F1ArgsT<T>& args) {
  args.validate();
  const std::complex<T> a = args.a, b = args.b, c = args.c;
  const std::complex<T> d = c - a - b;
  if (is_near_integer(d, kDegenerateGap)) {
    std::ostringstream os;
    os << "gauss_2f1: c - a - b = " << std::complex<double>(static_cast<double>(d.real()), static_cast<double>(d.imag()))
       << " is (near) an integer; connection formula degenerate";
    throw DegenerateConnection(os.str());
  }
  const T y = T(1) - args.x;
  const auto f1 = hyp2f1_series<T>(a, b, T(1) - d, y, 200000);
  const auto f2 = hyp2f1_series<T>(c - a, c - b, T(1) + d, y, 200000);
  if (!f1.converged || !f2.converged) throw DegenerateConnection("gauss_2f1: connection sub-series did not converge");
  const std::complex<T> gc = gamma<T>(c);
  const std::complex<T> t1 = gc * gamma<T>(d) * recip_gamma<T>(c - a) * recip_gamma<T>(c - b) * f1.value;
  const std::complex<T> t2 = gc * gamma<T>(-d) * recip_gamma<T>(a) * recip_gamma<T>(b) * real_pow<T>(y, d) * f2.value;
  return t1 + t2;
}

/// Gauss hypergeometric function 2F1(a, b; c; x) for x in [0, 1).
/// x <= 1/2: direct series. x > 1/2: connection formula; when c - a - b is within
/// kDegenerateGap of an integer the direct series is summed with an extended budget
/// instead, and DegenerateConnection is raised if even that cannot converge.
template <class T>
std::complex<T> gauss_2f1(const Hyp2F1ArgsT<T>& args) {
  args.validate();
  if (args.x == T(0)) return T(1);
  const bool terminates = is_near_nonpositive_integer(args.a, 0.0) || is_near_nonpositive_integer(args.b, 0.0);
  if (args.x <= T(0.5) || terminates) {
    const auto s = hyp2f1_series<T>(args.a, args.b, args.c, args.x, 1'000'000);
    if (!s.converged) throw DegenerateConnection("gauss_2f1: direct series did not converge");
    return s.value;
  }
  if (!is_near_integer(args.c - args.a - args.b, kDegenerateGap)) return hyp2f1_connection<T>(args);
  const auto s = hyp2f1_series<T>(args.a, args.b, args.c, args.x, kExtendedSeriesBudget);
  if (!s.converged) {
    std::ostringstream os;
    os << "gauss_2f1: c - a - b is an integer and x = " << static_cast<double>(args.x)
       << " is too close to 1 for the series fallback";
    throw DegenerateConnection(os.str());
  }
  return s.value;
}

inline cplx gauss_2f1(const Hyp2F1Args& args) { return gauss_2f1<double>(args); }
inline cplx gauss_2f1(cplx a, cplx b, cplx c, double x) { return gauss_2f1<double>(Hyp2F1Args{a, b, c, x}); }
inline cplx hyp2f1_connection(const Hyp2F1Args& args) { return hyp2f1_connection<double>(args); }

/// Euler's transformation F(a,b;c;x) = (1-x)^(c-a-b) F(c-a,c-b;c;x), both sides evaluated.
inline CheckReport euler_transform_check(cplx a, cplx b, cplx c, double x, double tolerance = 1e-10) {
  const cplx lhs = gauss_2f1(a, b, c, x);
  const cplx rhs = real_pow(1.0 - x, c - a - b) * gauss_2f1(c - a, c - b, c, x);
  return make_report("euler_transform", lhs, rhs, tolerance);
}

/// Gindikin Gamma function prod_{j=1}^{n} Gamma(s - (j - 1)).
inline cplx gindikin_gamma(cplx s, int n) {
  if (n < 1) throw DomainError("gindikin_gamma: rank must be >= 1");
  cplx p{1.0, 0.0};
  for (int j = 1; j <= n; ++j) {
    const cplx arg = s - static_cast<double>(j - 1);
    if (is_near_nonpositive_integer(arg, 1e-12)) {
      std::ostringstream os;
      os << "gindikin_gamma: factor j=" << j << " hits the pole Gamma(" << arg << ")";
      throw PoleError(os.str());
    }
    p *= gamma(arg);
  }
  return p;
}

/// 1 / Gindikin Gamma, zero when any factor sits on a pole.
inline cplx recip_gindikin_gamma(cplx s, int n) {
  cplx p{1.0, 0.0};
  for (int j = 1; j <= n; ++j) p *= recip_gamma(s - static_cast<double>(j - 1));
  return p;
}

/// c_nu(lambda) = G_n(n) G_n(s) / (G_n((s+n+nu)/2) G_n((s+n-nu)/2)) with G_n the
/// Gindikin Gamma function. Poles of the denominator make c vanish; poles of the
/// numerator raise PoleError.
inline cplx c_function(const SpectralParams& p) {
  return gindikin_gamma(static_cast<double>(p.n), p.n) * gindikin_gamma(p.s, p.n) *
         recip_gindikin_gamma(p.alpha_plus(), p.n) * recip_gindikin_gamma(p.alpha_minus(), p.n);
}

}  // namespace matball
