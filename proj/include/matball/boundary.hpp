#pragma once

// Poisson kernel on the matrix ball, normalized characters of U(n) and Weyl
// quadrature of class functions over the maximal torus.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <utility>
#include <vector>

#include "matball/errors.hpp"
#include "matball/numeric.hpp"
#include "matball/special.hpp"
#include "matball/spherical.hpp"

namespace matball {

/// n x n complex matrix Z with I - Z Z* positive definite.
struct BallPoint {
  CMatrix z;

  BallPoint() = default;
  explicit BallPoint(CMatrix m) : z(std::move(m)) {
    if (z.rows() != z.cols() || z.rows() == 0) throw DomainError("ball point must be a non-empty square matrix");
    const CMatrix a = CMatrix::Identity(z.rows(), z.cols()) - z * z.adjoint();
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success) throw DomainError("ball point: I - Z Z* is not positive definite");
  }

  static BallPoint scalar(int n, double r) { return BallPoint(CMatrix::Identity(n, n) * cplx(r, 0.0)); }
  int rank() const { return static_cast<int>(z.rows()); }
};

/// Angles of a torus element diag(e^{i theta_1}, ..., e^{i theta_n}), each in [0, 2 pi).
struct TorusAngles {
  std::vector<double> theta;

  TorusAngles() = default;
  explicit TorusAngles(std::vector<double> t) : theta(std::move(t)) {
    for (double v : theta)
      if (!(v >= 0.0 && v < kTwoPi)) throw DomainError("torus angle outside [0, 2 pi)");
  }
  int rank() const { return static_cast<int>(theta.size()); }

  CMatrix as_matrix() const {
    const int n = rank();
    CMatrix u = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) u(i, i) = std::polar(1.0, theta[static_cast<std::size_t>(i)]);
    return u;
  }

  double min_gap() const {
    double g = kTwoPi;
    for (std::size_t i = 0; i < theta.size(); ++i)
      for (std::size_t j = i + 1; j < theta.size(); ++j) {
        const double d = std::abs(theta[i] - theta[j]);
        g = std::min(g, std::min(d, kTwoPi - d));
      }
    return g;
  }
};

/// Uniform midpoint grid theta_j = 2 pi (j + 1/2)/N in each coordinate.
struct TorusGrid {
  int points_per_dim = 32;

  TorusGrid() = default;
  explicit TorusGrid(int n_points) : points_per_dim(n_points) {
    if (n_points < 8) throw DomainError("torus grid needs at least 8 points per dimension");
  }
  double node(int j) const { return kTwoPi * (j + 0.5) / points_per_dim; }
};

/// Smallest grid resolving the kernel concentration scale at radius r.
inline int required_grid(double r) {
  if (r < 0.9) return 8;
  return static_cast<int>(std::ceil(16.0 / (1.0 - r) - 1e-9));
}

inline void check_resolution(double r, const TorusGrid& grid) {
  if (grid.points_per_dim < required_grid(r)) {
    std::ostringstream os;
    os << "grid N=" << grid.points_per_dim << " cannot resolve the kernel at r=" << r << " (need N >= "
       << required_grid(r) << ")";
    throw ResolutionError(os.str());
  }
}

/// max(base, required_grid(r)).
inline TorusGrid grid_for_radius(double r, int base) { return TorusGrid(std::max(base, required_grid(r))); }

/// P(Z, U) = [det(I - Z Z*) / |det(I - Z U*)|^2]^((s+n-nu)/2) * det(I - Z U*)^(-nu).
inline cplx poisson_kernel(const SpectralParams& p, const BallPoint& Z, const CMatrix& U) {
  const int n = Z.rank();
  if (U.rows() != n || U.cols() != n) throw DomainError("poisson_kernel: U has the wrong shape");
  const CMatrix I = CMatrix::Identity(n, n);
  const double det_a = determinant(I - Z.z * Z.z.adjoint()).real();
  const cplx det_w = determinant(I - Z.z * U.adjoint());
  if (std::abs(det_w) == 0.0) throw SingularError("poisson_kernel: det(I - Z U*) vanishes");
  return real_pow(det_a / std::norm(det_w), p.alpha_minus()) * ipow(det_w, -p.nu);
}

inline cplx poisson_kernel(const SpectralParams& p, const BallPoint& Z, const TorusAngles& theta) {
  return poisson_kernel(p, Z, theta.as_matrix());
}

/// Kernel of the unit disk factor: P(r, e^{i theta}) for n = 1 with the rank-n exponents.
inline cplx kernel_factor(const SpectralParams& p, double r, double theta) {
  const cplx w = 1.0 - r * std::polar(1.0, -theta);
  return real_pow((1.0 - r * r) / std::norm(w), p.alpha_minus()) * ipow(w, -p.nu);
}

namespace detail {

/// det(e^{i theta_i e_j}) for the exponent row e, by Laplace/Leibniz expansion.
inline cplx alternant(const std::vector<double>& theta, const std::vector<int>& e) {
  const int n = static_cast<int>(theta.size());
  CMatrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = std::polar(1.0, theta[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j)]);
  return determinant(M);
}

inline std::vector<int> shifted_weight(const Signature& m) {
  const int n = m.rank();
  std::vector<int> e(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(j)] + n - 1 - j;
  return e;
}

/// Visits every strictly increasing index tuple 0 <= i_1 < ... < i_n < N.
template <class Visit>
void for_each_increasing_tuple(int n, int N, Visit&& visit) {
  if (n > N) return;
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(idx);
    int k = n - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == N - n + k) --k;
    if (k < 0) return;
    ++idx[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// prod_{i<j} |e^{i a_i} - e^{i a_j}|^2
inline double vandermonde_sq(const std::vector<double>& theta) {
  double v = 1.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::size_t j = i + 1; j < theta.size(); ++j) v *= std::norm(std::polar(1.0, theta[i]) - std::polar(1.0, theta[j]));
  return v;
}

/// Leibniz expansion of det(M) for M given as row-major n x n, n <= 4; LU otherwise.
inline cplx small_det(const cplx* M, int n) {
  switch (n) {
    case 1:
      return M[0];
    case 2:
      return M[0] * M[3] - M[1] * M[2];
    case 3:
      return M[0] * (M[4] * M[8] - M[5] * M[7]) - M[1] * (M[3] * M[8] - M[5] * M[6]) +
             M[2] * (M[3] * M[7] - M[4] * M[6]);
    default: {
      CMatrix A(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = M[i * n + j];
      return determinant(A);
    }
  }
}

}  // namespace detail

/// Normalized character phi_m(e^{i Theta}) = det(e^{i theta_i (m_j + n - j)}) / (d_m det(e^{i theta_i (n - j)})).
inline cplx schur_character(const Signature& m, const TorusAngles& theta) {
  if (m.rank() != theta.rank()) throw DomainError("schur_character: rank mismatch");
  if (theta.rank() > 1 && theta.min_gap() < 1e-8) throw CoincidentAnglesError("schur_character: angles closer than 1e-8");
  const Signature zero(std::vector<int>(static_cast<std::size_t>(m.rank()), 0));
  const cplx num = detail::alternant(theta.theta, detail::shifted_weight(m));
  const cplx den = detail::alternant(theta.theta, detail::shifted_weight(zero));
  return num / (static_cast<double>(weyl_dimension(m)) * den);
}

/// Integral over U(n), probability Haar measure, of a class function given on the torus:
/// (1/n!) N^{-n} sum_nodes f |Delta|^2. For symmetric f this equals the sum over strictly
/// increasing node tuples (the weight vanishes on coincident nodes); that is what is summed.
template <class F>
cplx weyl_integrate(F&& f, const TorusGrid& grid, int n) {
  const int N = grid.points_per_dim;
  std::vector<double> nodes(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) nodes[static_cast<std::size_t>(j)] = grid.node(j);
  PairwiseSum<cplx> acc;
  std::vector<double> theta(static_cast<std::size_t>(n));
  detail::for_each_increasing_tuple(n, N, [&](const std::vector<int>& idx) {
    for (int i = 0; i < n; ++i) theta[static_cast<std::size_t>(i)] = nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    const cplx v = f(TorusAngles(theta));
    acc.add(v * detail::vandermonde_sq(theta));
  });
  return acc.result() / std::pow(static_cast<double>(N), n);
}

namespace detail {

/// Per-node tables for the radial fast path: e^{i k theta_j} for k in [kmin, kmax].
struct PhaseTable {
  int kmin = 0;
  int kmax = 0;
  int N = 0;
  std::vector<cplx> data;

  PhaseTable(const TorusGrid& grid, int lo, int hi) : kmin(lo), kmax(hi), N(grid.points_per_dim) {
    data.resize(static_cast<std::size_t>((hi - lo + 1) * N));
    for (int k = lo; k <= hi; ++k)
      for (int j = 0; j < N; ++j) data[static_cast<std::size_t>((k - lo) * N + j)] = std::polar(1.0, k * grid.node(j));
  }
  cplx operator()(int k, int j) const { return data[static_cast<std::size_t>((k - kmin) * N + j)]; }
};

/// sum over increasing tuples of prod_i w(theta_i) * det(e^{i theta_i a_j}) conj(det(e^{i theta_i b_j})) / N^n
inline cplx torus_pairing(const std::vector<cplx>& weight, const std::vector<int>& a, const std::vector<int>& b,
                          const TorusGrid& grid) {
  const int n = static_cast<int>(a.size());
  const int N = grid.points_per_dim;
  int lo = 0, hi = 0;
  for (int v : a) lo = std::min(lo, v), hi = std::max(hi, v);
  for (int v : b) lo = std::min(lo, v), hi = std::max(hi, v);
  const PhaseTable T(grid, lo, hi);
  PairwiseSum<cplx> acc;
  std::vector<cplx> Ma(static_cast<std::size_t>(n * n)), Mb(static_cast<std::size_t>(n * n));
  for_each_increasing_tuple(n, N, [&](const std::vector<int>& idx) {
    cplx w = 1.0;
    for (int i = 0; i < n; ++i) {
      const int j = idx[static_cast<std::size_t>(i)];
      w *= weight[static_cast<std::size_t>(j)];
      for (int c = 0; c < n; ++c) {
        Ma[static_cast<std::size_t>(i * n + c)] = T(a[static_cast<std::size_t>(c)], j);
        Mb[static_cast<std::size_t>(i * n + c)] = T(b[static_cast<std::size_t>(c)], j);
      }
    }
    acc.add(w * small_det(Ma.data(), n) * std::conj(small_det(Mb.data(), n)));
  });
  return acc.result() / std::pow(static_cast<double>(N), n);
}

}  // namespace detail

/// Weyl quadrature of theta -> P(rI, e^{i Theta}) phi_m(e^{i Theta}).
/// At Z = rI the kernel is the product of disk factors, and phi_m |Delta|^2 is the
/// product of two alternants divided by d_m, so no division by a Vandermonde occurs.
inline cplx spherical_oracle(const SpectralParams& p, const Signature& m, RadialArg r, const TorusGrid& grid) {
  if (m.rank() != p.n) throw DomainError("spherical_oracle: rank mismatch");
  check_resolution(r.r, grid);
  const int N = grid.points_per_dim;
  std::vector<cplx> w(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) w[static_cast<std::size_t>(j)] = kernel_factor(p, r.r, grid.node(j));
  const Signature zero(std::vector<int>(static_cast<std::size_t>(p.n), 0));
  return detail::torus_pairing(w, detail::shifted_weight(m), detail::shifted_weight(zero), grid) /
         static_cast<double>(weyl_dimension(m));
}

/// Outcome of a grid-doubling refinement.
struct RefinedValue {
  cplx value;
  int grid = 0;
  double last_change = 0.0;
  bool converged = false;
};

/// Doubles N from the starting grid until successive values differ by <= rel_tol |v| + 1e-14.
template <class Eval>
RefinedValue refine_by_doubling(Eval&& eval, int start_grid, int max_grid, double rel_tol = 1e-8) {
  RefinedValue out;
  int N = start_grid;
  cplx prev = eval(TorusGrid(N));
  while (2 * N <= max_grid) {
    N *= 2;
    const cplx cur = eval(TorusGrid(N));
    out.last_change = std::abs(cur - prev);
    prev = cur;
    if (out.last_change <= rel_tol * std::abs(cur) + 1e-14) {
      out.value = cur;
      out.grid = N;
      out.converged = true;
      return out;
    }
  }
  out.value = prev;
  out.grid = N;
  return out;
}

/// spherical_oracle refined until self-consistent to 1e-8.
inline RefinedValue refine_spherical_oracle(const SpectralParams& p, const Signature& m, RadialArg r, int start_grid,
                                            int max_grid = 768) {
  const int first = std::max(start_grid, required_grid(r.r));
  return refine_by_doubling([&](const TorusGrid& g) { return spherical_oracle(p, m, r, g); }, first,
                            std::max(max_grid, 2 * first));
}

/// Trapezoidal quadrature of (1 - r e^{i t})^{-(s+n-nu)/2} (1 - r e^{-i t})^{-(s+n+nu)/2} e^{i k t} dt/(2 pi)
/// against the closed form phi_k(r) / (1 - r^2)^{(s+n-nu)/2}.
inline CheckReport fourier_mode_check(const SpectralParams& p, int k, RadialArg r, int N, double tolerance = 1e-9) {
  if (N < 8) throw DomainError("fourier_mode_check: N must be >= 8");
  const cplx am = p.alpha_minus();
  const cplx ap = p.alpha_plus();
  PairwiseSum<cplx> acc;
  for (int j = 0; j < N; ++j) {
    const double t = kTwoPi * j / N;
    const cplx e = std::polar(1.0, t);
    acc.add(std::pow(1.0 - r.r * e, -am) * std::pow(1.0 - r.r * std::conj(e), -ap) * std::polar(1.0, k * t));
  }
  const cplx quad = acc.result() / static_cast<double>(N);
  const cplx closed = phi_scalar(p, k, r) / real_pow(1.0 - r.r * r.r, am);
  std::ostringstream name;
  name << "fourier_mode k=" << k << " r=" << r.r;
  return make_report(name.str(), quad, closed, tolerance);
}

/// (1 - r^2)^{-n(n - nu - Re s)/2} [ integral over U(n) of |F(r, .)|^pexp ]^{1/pexp}.
template <class Slice>
double hardy_norm(const SpectralParams& p, Slice&& F, double pexp, RadialArg r, const TorusGrid& grid) {
  if (!(pexp >= 1.0)) throw DomainError("hardy_norm: exponent must be >= 1");
  const cplx integral = weyl_integrate([&](const TorusAngles& t) { return cplx(std::pow(std::abs(F(r.r, t)), pexp), 0.0); },
                                       grid, p.n);
  const double weight = std::pow(1.0 - r.r * r.r, -p.weight_exponent());
  return weight * std::pow(std::max(integral.real(), 0.0), 1.0 / pexp);
}

}  // namespace matball
