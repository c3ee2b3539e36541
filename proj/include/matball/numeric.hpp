#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace matball {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Distance from the real number x to the nearest integer.
inline double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

/// Distance from z to the nearest (complex) integer.
template <class T>
double distance_to_integer(std::complex<T> z) {
  return static_cast<double>(std::hypot(z.real() - std::round(z.real()), z.imag()));
}

template <class T>
bool is_near_integer(std::complex<T> z, double tol) {
  return distance_to_integer(z) <= tol;
}

/// True when z lies within tol of {0, -1, -2, ...}.
template <class T>
bool is_near_nonpositive_integer(std::complex<T> z, double tol) {
  return z.real() < T(0.5) && is_near_integer(z, tol);
}

/// z^k for integer k by repeated squaring; single-valued, no branch choice involved.
template <class T>
std::complex<T> ipow(std::complex<T> z, int k) {
  if (k < 0) return T(1) / ipow(z, -k);
  std::complex<T> result{1, 0};
  std::complex<T> base = z;
  unsigned e = static_cast<unsigned>(k);
  while (e != 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

/// base^e for a strictly positive real base, via the principal logarithm.
template <class T>
std::complex<T> real_pow(T base, std::complex<T> e) {
  return std::exp(e * std::log(base));
}

inline cplx real_pow(double base, cplx e) { return real_pow<double>(base, e); }

/// (-1)^k.
inline constexpr double sign_power(long long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Relative discrepancy |a - b| / |b|, falling back to |a - b| when b == 0.
inline double relative_error(cplx computed, cplx reference) {
  const double denom = std::abs(reference);
  const double diff = std::abs(computed - reference);
  return denom > 0.0 ? diff / denom : diff;
}

/// Streaming pairwise (cascade) summation. The reduction tree depends only on the
/// number of terms, so results are reproducible bit-for-bit for a fixed input order.
template <class T>
class PairwiseSum {
 public:
  void add(T value) {
    stack_.emplace_back(value, std::size_t{1});
    while (stack_.size() >= 2 && stack_[stack_.size() - 1].second == stack_[stack_.size() - 2].second) {
      auto top = stack_.back();
      stack_.pop_back();
      stack_.back().first += top.first;
      stack_.back().second += top.second;
    }
  }

  T result() const {
    T total{};
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) total += it->first;
    return total;
  }

 private:
  std::vector<std::pair<T, std::size_t>> stack_;
};

/// Kahan-compensated complex accumulator for long, slowly converging series.
template <class C = cplx>
class CompensatedSum {
 public:
  void add(C v) {
    const C y = v - carry_;
    const C t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  C value() const { return sum_; }

 private:
  C sum_{0, 0};
  C carry_{0, 0};
};

/// Determinant by LU with partial (magnitude) pivoting.
template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  if (m.rows() == 0) return S(1);
  return m.derived().partialPivLu().determinant();
}

/// Outcome of one numerical verification: a computed value set against a reference.
struct CheckReport {
  std::string name;
  cplx computed{};
  cplx reference{};
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline CheckReport make_report(std::string name, cplx computed, cplx reference, double tolerance) {
  CheckReport r;
  r.name = std::move(name);
  r.computed = computed;
  r.reference = reference;
  r.rel_error = relative_error(computed, reference);
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.rel_error) && r.rel_error <= tolerance;
  return r;
}

}  // namespace matball
