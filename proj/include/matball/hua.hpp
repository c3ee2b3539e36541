#pragma once

// Matrix Hua operator by Wirtinger finite differences.
//
// Conventions: dF(i,j) = dF/dz_ij, dbarF(i,j) = dF/dzbar_ij with
//   d/dz = (d/dx - i d/dy)/2,  d/dzbar = (d/dx + i d/dy)/2
// applied entrywise. A = I - Z Z*, B = I - Z* Z and Z* are frozen at the base point.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "matball/boundary.hpp"
#include "matball/errors.hpp"
#include "matball/numeric.hpp"
#include "matball/special.hpp"

namespace matball {

using ScalarField = std::function<cplx(const CMatrix&)>;

inline constexpr double kDefaultFdStep = 1e-3;

struct WirtingerGrad {
  CMatrix d;
  CMatrix dbar;
};

struct HuaResult {
  CMatrix top;
  CMatrix bottom;
};

/// Which matrix multiplies the first-order term of the bottom block.
/// derived: Z* (I - Z* Z) ; as_printed: Z* (I - Z Z*).
enum class HuaBottomForm { derived, as_printed };

inline const char* to_string(HuaBottomForm f) { return f == HuaBottomForm::derived ? "derived" : "as_printed"; }

namespace detail {

inline double operator_norm(const CMatrix& z) {
  Eigen::JacobiSVD<CMatrix> svd(z);
  return svd.singularValues()(0);
}

inline void require_margin(const BallPoint& Z, double reach, const char* who) {
  if (operator_norm(Z.z) + reach >= 1.0) {
    std::ostringstream os;
    os << who << ": finite-difference probes of reach " << reach << " leave the ball";
    throw MarginError(os.str());
  }
}

/// Real coordinates of an n x n complex matrix: index 2(i n + j) is Re z_ij, +1 is Im z_ij.
inline CMatrix unit_direction(int n, int var) {
  CMatrix e = CMatrix::Zero(n, n);
  const int entry = var / 2;
  e(entry / n, entry % n) = (var % 2 == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  return e;
}

}  // namespace detail

/// Central-difference Wirtinger gradient; truncation error O(h^2).
template <class Field>
WirtingerGrad wirtinger_grad(Field&& F, const BallPoint& Z, double h) {
  detail::require_margin(Z, 2.0 * h, "wirtinger_grad");
  const int n = Z.rank();
  WirtingerGrad g{CMatrix(n, n), CMatrix(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = 1.0;
      const cplx fx = (F(Z.z + h * e) - F(Z.z - h * e)) / (2.0 * h);
      const cplx ie(0.0, h);
      const cplx fy = (F(Z.z + ie * e) - F(Z.z - ie * e)) / (2.0 * h);
      g.d(i, j) = (fx - cplx(0.0, 1.0) * fy) / 2.0;
      g.dbar(i, j) = (fx + cplx(0.0, 1.0) * fy) / 2.0;
    }
  }
  return g;
}

/// Real Hessian over the 2 n^2 real coordinates by central differences (symmetric).
template <class Field>
std::vector<cplx> real_hessian(Field&& F, const BallPoint& Z, double h) {
  const int n = Z.rank();
  const int m = 2 * n * n;
  std::vector<cplx> H(static_cast<std::size_t>(m * m));
  const cplx f0 = F(Z.z);
  std::vector<CMatrix> dir;
  for (int v = 0; v < m; ++v) dir.push_back(h * detail::unit_direction(n, v));
  for (int u = 0; u < m; ++u) {
    const auto& eu = dir[static_cast<std::size_t>(u)];
    H[static_cast<std::size_t>(u * m + u)] = (F(Z.z + eu) - 2.0 * f0 + F(Z.z - eu)) / (h * h);
    for (int v = u + 1; v < m; ++v) {
      const auto& ev = dir[static_cast<std::size_t>(v)];
      const cplx val = (F(Z.z + eu + ev) - F(Z.z + eu - ev) - F(Z.z - eu + ev) + F(Z.z - eu - ev)) / (4.0 * h * h);
      H[static_cast<std::size_t>(u * m + v)] = val;
      H[static_cast<std::size_t>(v * m + u)] = val;
    }
  }
  return H;
}

/// Mixed Wirtinger second derivatives W[(a,b),(q,c)] = d^2 F / (dzbar_ab dz_qc).
struct MixedSecond {
  int n = 0;
  std::vector<cplx> w;
  cplx operator()(int a, int b, int q, int c) const {
    return w[static_cast<std::size_t>(((a * n + b) * n + q) * n + c)];
  }
};

template <class Field>
MixedSecond mixed_second(Field&& F, const BallPoint& Z, double h) {
  const int n = Z.rank();
  const int m = 2 * n * n;
  const auto H = real_hessian(F, Z, h);
  auto at = [&](int u, int v) { return H[static_cast<std::size_t>(u * m + v)]; };
  const cplx I(0.0, 1.0);
  MixedSecond out;
  out.n = n;
  out.w.resize(static_cast<std::size_t>(n * n * n * n));
  for (int ab = 0; ab < n * n; ++ab) {
    for (int qc = 0; qc < n * n; ++qc) {
      const int xa = 2 * ab, ya = 2 * ab + 1, xq = 2 * qc, yq = 2 * qc + 1;
      out.w[static_cast<std::size_t>(ab * n * n + qc)] =
          (at(xa, xq) - I * at(xa, yq) + I * at(ya, xq) + at(ya, yq)) / 4.0;
    }
  }
  return out;
}

/// Both diagonal blocks of the Hua operator applied to F at Z:
///   top_pq    = sum A_pa B_bc W(ab,qc) - nu sum A_pa Z*_bq dbarF_ab
///   bottom_pq = -sum A_ab B_cq W(bc,ap) + nu sum Z*_pa M_bq dbarF_ab,  M = B (derived) or A (as printed).
template <class Field>
HuaResult hua_apply(const SpectralParams& p, Field&& F, const BallPoint& Z, double h,
                    HuaBottomForm form = HuaBottomForm::derived) {
  detail::require_margin(Z, 4.0 * h, "hua_apply");
  const int n = Z.rank();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix A = I - Z.z * Z.z.adjoint();
  const CMatrix B = I - Z.z.adjoint() * Z.z;
  const CMatrix Zs = Z.z.adjoint();
  const CMatrix& M = form == HuaBottomForm::derived ? B : A;
  const WirtingerGrad g = wirtinger_grad(F, Z, h);
  const MixedSecond W = mixed_second(F, Z, h);
  const double nu = p.nu;
  HuaResult out{CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
  for (int pi = 0; pi < n; ++pi) {
    for (int q = 0; q < n; ++q) {
      cplx t = 0.0, bt = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          t -= nu * A(pi, a) * Zs(b, q) * g.dbar(a, b);
          bt += nu * Zs(pi, a) * M(b, q) * g.dbar(a, b);
          for (int c = 0; c < n; ++c) {
            t += A(pi, a) * B(b, c) * W(a, b, q, c);
            bt -= A(a, b) * B(c, q) * W(b, c, a, pi);
          }
        }
      }
      out.top(pi, q) = t;
      out.bottom(pi, q) = bt;
    }
  }
  return out;
}

/// d'P = P [ (s+n+nu)/2 U* (I - Z U*)^{-1} - (s+n-nu)/2 Z* (I - Z Z*)^{-1} ]; entry (j,i) is dP/dz_ij.
inline CMatrix kernel_grad_analytic(const SpectralParams& p, const BallPoint& Z, const CMatrix& U) {
  const int n = Z.rank();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix W = I - Z.z * U.adjoint();
  const CMatrix A = I - Z.z * Z.z.adjoint();
  const cplx P = poisson_kernel(p, Z, U);
  return P * (p.alpha_plus() * U.adjoint() * W.inverse() - p.alpha_minus() * Z.z.adjoint() * A.inverse());
}

/// dbarP = (s+n-nu)/2 [ (I - U Z*)^{-1} U - (I - Z Z*)^{-1} Z ] times P when with_kernel is set;
/// entry (i,j) is dP/dzbar_ij.
inline CMatrix kernel_dbar_analytic(const SpectralParams& p, const BallPoint& Z, const CMatrix& U,
                                   bool with_kernel = true) {
  const int n = Z.rank();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix core = (I - U * Z.z.adjoint()).inverse() * U - (I - Z.z * Z.z.adjoint()).inverse() * Z.z;
  const cplx scale = with_kernel ? poisson_kernel(p, Z, U) : cplx(1.0, 0.0);
  return p.alpha_minus() * scale * core;
}

/// Eigenvalue of the Hua system on the kernel: mu = (s^2 - (n - nu)^2)/4.
inline cplx hua_eigenvalue(const SpectralParams& p) {
  const double d = p.n - p.nu;
  return (p.s * p.s - d * d) / 4.0;
}

struct HuaResidual {
  CheckReport top;
  CheckReport bottom;
  cplx mu;
  cplx kernel;
  bool pass() const { return top.pass && bottom.pass; }
};

inline CheckReport residual_report(std::string name, double residual, double tolerance) {
  CheckReport r;
  r.name = std::move(name);
  r.computed = residual;
  r.reference = 0.0;
  r.rel_error = residual;
  r.tolerance = tolerance;
  r.pass = std::isfinite(residual) && residual <= tolerance;
  return r;
}

/// ||top - mu P I||_F / |P| and ||bottom + mu P I||_F / |P| for F = P(., U).
inline HuaResidual hua_residual(const SpectralParams& p, const BallPoint& Z, const CMatrix& U, double h,
                                double tolerance = 1e-4, HuaBottomForm form = HuaBottomForm::derived) {
  const int n = Z.rank();
  auto F = [&](const CMatrix& W) { return poisson_kernel(p, BallPoint(W), U); };
  const HuaResult res = hua_apply(p, F, Z, h, form);
  HuaResidual out;
  out.mu = hua_eigenvalue(p);
  out.kernel = poisson_kernel(p, Z, U);
  const CMatrix target = out.mu * out.kernel * CMatrix::Identity(n, n);
  const double scale = std::abs(out.kernel);
  out.top = residual_report("hua_top", (res.top - target).norm() / scale, tolerance);
  out.bottom = residual_report(std::string("hua_bottom_") + to_string(form), (res.bottom + target).norm() / scale,
                               tolerance);
  return out;
}

/// Haar-distributed unitary from a seeded engine (QR of a complex Gaussian matrix, phases fixed).
inline CMatrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix X(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) X(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(X);
  CMatrix Q = qr.householderQ();
  const CMatrix R = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const cplx d = R(j, j);
    Q.col(j) *= std::abs(d) > 0.0 ? d / std::abs(d) : cplx(1.0, 0.0);
  }
  return Q;
}

/// Random ball point with operator norm exactly `radius`.
inline BallPoint random_ball_point(int n, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix X(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) X(i, j) = cplx(g(rng), g(rng));
  return BallPoint(X * (radius / detail::operator_norm(X)));
}

}  // namespace matball
