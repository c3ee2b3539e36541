#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "matball/errors.hpp"
#include "matball/numeric.hpp"
#include "matball/special.hpp"

namespace matball {

/// Largest |m_i| accepted in a signature.
inline constexpr int kMaxSignaturePart = 50;

/// Weakly decreasing integer n-tuple labelling an irreducible character of U(n).
struct Signature {
  std::vector<int> parts;

  Signature() = default;
  explicit Signature(std::vector<int> p) : parts(std::move(p)) { validate(); }
  Signature(std::initializer_list<int> p) : parts(p) { validate(); }

  void validate() const {
    if (parts.empty()) throw DomainError("signature: rank must be >= 1");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (std::abs(parts[i]) > kMaxSignaturePart) throw DomainError("signature: |m_i| exceeds 50");
      if (i > 0 && parts[i] > parts[i - 1]) throw DomainError("signature: parts must be weakly decreasing");
    }
  }

  int rank() const { return static_cast<int>(parts.size()); }
  int operator[](std::size_t i) const { return parts[i]; }
  int size_sum() const {
    int t = 0;
    for (int v : parts) t += v;
    return t;
  }
  bool is_zero() const {
    return std::all_of(parts.begin(), parts.end(), [](int v) { return v == 0; });
  }
  bool operator==(const Signature& o) const { return parts == o.parts; }
  bool operator<(const Signature& o) const { return parts < o.parts; }

  std::string str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? ";" : "") << parts[i];
    os << ")";
    return os.str();
  }
};

/// Radius with 0 <= r < 1.
struct RadialArg {
  double r = 0.0;
  RadialArg() = default;
  RadialArg(double value) : r(value) {  // NOLINT(google-explicit-constructor)
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("radial argument must lie in [0, 1)");
  }
  operator double() const { return r; }  // NOLINT(google-explicit-constructor)
};

/// All signatures of rank n with every |m_i| <= max_part, in lexicographically decreasing order.
inline std::vector<Signature> signatures_up_to(int n, int max_part) {
  std::vector<Signature> out;
  std::vector<int> cur(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int pos, int upper) {
    if (pos == n) {
      out.emplace_back(cur);
      return;
    }
    for (int v = upper; v >= -max_part; --v) {
      cur[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, max_part);
  return out;
}

/// d_m = prod_{i<j} (1 + (m_i - m_j)/(j - i)), computed exactly in integers.
inline std::int64_t weyl_dimension(const Signature& m) {
  const int n = m.rank();
  std::int64_t num = 1;
  std::int64_t den = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      num *= (j - i) + m[static_cast<std::size_t>(i)] - m[static_cast<std::size_t>(j)];
      den *= (j - i);
    }
  }
  return num / den;
}

/// Sign convention of the scalar building block: +1 for k >= 0, -1 for k < 0.
inline int epsilon_of(int k) { return k >= 0 ? 1 : -1; }

/// 1 - r^2 without the cancellation of forming r^2 first.
template <class T>
T one_minus_r2(T r) {
  return (T(1) - r) * (T(1) + r);
}

/// phi_k(r) = r^|k| (1-r^2)^((s+n-nu)/2) ((s+n+e nu)/2)_|k| / |k|!
///            * 2F1((s+n-e nu)/2, (s+n+e nu)/2 + |k|; 1+|k|; r^2)
/// with e forced to the given value, evaluated in the real type T.
template <class T>
std::complex<T> phi_scalar_eps_t(const SpectralParams& p, int k, T r, int eps) {
  using C = std::complex<T>;
  const int ak = std::abs(k);
  if (ak > 0 && r == T(0)) return T(0);
  const T x = r * r;
  const C base = C(p.s.real(), p.s.imag()) + T(p.n);
  const C a = (base - T(eps * p.nu)) / T(2);
  const C b = (base + T(eps * p.nu)) / T(2);
  const C am = C(p.alpha_minus().real(), p.alpha_minus().imag());
  const C head = std::pow(r, ak) * real_pow<T>(one_minus_r2(r), am) * pochhammer_over_factorial<T>(b, ak);
  if (x == T(0)) return head;
  return head * gauss_2f1<T>({a, b + T(ak), C(T(1) + T(ak)), x});
}

inline cplx phi_scalar_eps(const SpectralParams& p, int k, RadialArg r, int eps) {
  return phi_scalar_eps_t<double>(p, k, r.r, eps);
}

inline cplx phi_scalar(const SpectralParams& p, int k, RadialArg r) { return phi_scalar_eps(p, k, r, epsilon_of(k)); }

/// n x n matrix (phi_{m_i - i + j}(r))_{i,j} in the real type T.
template <class T>
Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic> spherical_matrix_t(const SpectralParams& p,
                                                                                   const Signature& m, T r) {
  const int n = m.rank();
  if (n != p.n) throw DomainError("signature rank does not match n");
  Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic> M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int k = m[static_cast<std::size_t>(i)] - i + j;
      M(i, j) = phi_scalar_eps_t<T>(p, k, r, epsilon_of(k));
    }
  return M;
}

inline CMatrix spherical_matrix(const SpectralParams& p, const Signature& m, RadialArg r) {
  return spherical_matrix_t<double>(p, m, r.r);
}

/// Generalized spherical function Phi_m(r) = det(phi_{m_i - i + j}(r)) / d_m.
/// Normalized so that Phi_0(0) = 1 under probability Haar measure on U(n).
/// Entries and determinant are formed in long double: near r = 1 the determinant
/// cancels by (1 - r^2)^{n(n-1)} relative to its terms.
inline cplx phi_big(const SpectralParams& p, const Signature& m, RadialArg r) {
  const std::complex<long double> d = determinant(spherical_matrix_t<long double>(p, m, r.r));
  return cplx(static_cast<double>(d.real()), static_cast<double>(d.imag())) / static_cast<double>(weyl_dimension(m));
}

/// Phi_m(r) / (c_nu(lambda) (1-r^2)^(n(n-nu-s)/2)); tends to 1 as r -> 1.
inline cplx key_lemma_ratio(const SpectralParams& p, const Signature& m, RadialArg r) {
  if (!p.in_generic_set()) throw DomainError("key_lemma_ratio: s lies in the excluded lattice");
  if (!p.in_asymptotic_range()) throw DomainError("key_lemma_ratio: requires Re(s) > n - 1");
  const cplx e = static_cast<double>(p.n) * (static_cast<double>(p.n - p.nu) - p.s) / 2.0;
  return phi_big(p, m, r) / (c_function(p) * real_pow(one_minus_r2(r.r), e));
}

/// The constant product as printed (no overall sign correction).
inline cplx gamma_constant_printed(const SpectralParams& p) {
  const int n = p.n;
  const cplx s = p.s;
  const double nd = n;
  const double nu = p.nu;
  cplx out = 1.0;
  for (int k = 1; k <= n - 1; ++k) {
    const double kd = k;
    out *= factorial(n - k);
    const cplx u = (2.0 - s - nd - nu) / 2.0 + kd - 1.0;
    const cplx v = (2.0 - s - nd + nu) / 2.0 + kd - 1.0;
    cplx den = ipow(-s - nd + kd + 1.0, n - k);
    for (int j = 1; j <= n - k; ++j) den *= pochhammer(-s + kd - static_cast<double>(j), 2);
    if (std::abs(den) == 0.0) {
      std::ostringstream os;
      os << "gamma_constant: zero denominator at k=" << k;
      throw PoleError(os.str());
    }
    out *= ipow(u, n - k) * ipow(v, n - k) / den;
  }
  return out;
}

/// gamma(lambda, nu): the printed product times (-1)^(n(n-1)/2), the sign for which
/// (Gamma(s+n-1)/(Gamma(a+)Gamma(a-)))^n gamma = c_nu holds.
inline cplx gamma_constant(const SpectralParams& p) {
  const long long n = p.n;
  return sign_power(n * (n - 1) / 2) * gamma_constant_printed(p);
}

}  // namespace matball
