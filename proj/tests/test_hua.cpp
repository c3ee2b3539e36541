#include "test_support.hpp"

#include <random>

#include "matball/hua.hpp"

using namespace matball;

namespace {

CMatrix unit(int n, int i, int j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

double fd_error(const CMatrix& approx, const CMatrix& exact) { return (approx - exact).norm(); }

}  // namespace

TEST_CASE("wirtinger derivatives of coordinates", "[hua][fd]") {
  std::mt19937_64 rng(1);
  const BallPoint Z = random_ball_point(2, 0.5, rng);
  const auto g1 = wirtinger_grad([](const CMatrix& z) { return z(0, 0); }, Z, 1e-3);
  REQUIRE(fd_error(g1.d, unit(2, 0, 0)) <= 1e-10);
  REQUIRE(g1.dbar.norm() <= 1e-10);
  const auto g2 = wirtinger_grad([](const CMatrix& z) { return std::conj(z(0, 1)); }, Z, 1e-3);
  REQUIRE(g2.d.norm() <= 1e-10);
  REQUIRE(fd_error(g2.dbar, unit(2, 0, 1)) <= 1e-10);
}

TEST_CASE("property: holomorphic fields have vanishing dbar", "[hua][fd][property]") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const BallPoint Z = random_ball_point(2, 0.6, rng);
    // O(h^2) truncation: the holomorphic part of the error does not cancel in dbar.
    const auto hol = wirtinger_grad([](const CMatrix& z) { return std::exp(z.determinant()) + z.trace() * z(1, 0); }, Z, 1e-4);
    const auto anti = wirtinger_grad([](const CMatrix& z) { return std::conj(z(0, 1) * z(1, 1) * z(1, 1)); }, Z, 1e-4);
    REQUIRE(hol.dbar.norm() <= 1e-8);
    REQUIRE(anti.d.norm() <= 1e-8);
  }
}

TEST_CASE("gradient of det(I - Z Z*)", "[hua][fd]") {
  // quadratic along every real coordinate, so central differences are exact up to roundoff
  std::mt19937_64 rng(3);
  auto F = [](const CMatrix& z) { return (CMatrix::Identity(2, 2) - z * z.adjoint()).determinant(); };
  for (int t = 0; t < 5; ++t) {
    const BallPoint Z = random_ball_point(2, 0.6, rng);
    const CMatrix A = CMatrix::Identity(2, 2) - Z.z * Z.z.adjoint();
    // dF/dz_ij = -det(A) (Z* A^{-1})_{ji}
    const CMatrix exact = (-A.determinant() * (Z.z.adjoint() * A.inverse())).transpose();
    REQUIRE(fd_error(wirtinger_grad(F, Z, 1e-3).d, exact) <= 1e-10);
  }
}

TEST_CASE("property: Richardson order 2 on polynomial fields", "[hua][fd][property]") {
  std::mt19937_64 rng(4);
  const BallPoint Z = random_ball_point(2, 0.5, rng);
  // Holomorphic monomials are differentiated exactly at O(h^2), so the fields mix z and zbar.
  // F = z00^2 conj(z00) + z01 conj(z01)^2: dF/dz00 = 2 |z00|^2, dF/dzbar01 = 2 |z01|^2
  auto F = [](const CMatrix& z) {
    return z(0, 0) * z(0, 0) * std::conj(z(0, 0)) + z(0, 1) * std::conj(z(0, 1)) * std::conj(z(0, 1));
  };
  const cplx d00 = 2.0 * std::norm(Z.z(0, 0));
  const cplx db01 = 2.0 * std::norm(Z.z(0, 1));
  const auto g1 = wirtinger_grad(F, Z, 1e-2), g2 = wirtinger_grad(F, Z, 5e-3);
  REQUIRE(std::abs(g1.d(0, 0) - d00) / std::abs(g2.d(0, 0) - d00) == Catch::Approx(4.0).epsilon(0.25));
  REQUIRE(std::abs(g1.dbar(0, 1) - db01) / std::abs(g2.dbar(0, 1) - db01) == Catch::Approx(4.0).epsilon(0.25));

  // G = |z10|^4: d2G/dzbar10 dz10 = 4 |z10|^2
  auto G = [](const CMatrix& z) { return cplx(std::norm(z(1, 0)) * std::norm(z(1, 0)), 0.0); };
  const cplx w = 4.0 * std::norm(Z.z(1, 0));
  const double e1 = std::abs(mixed_second(G, Z, 1e-2)(1, 0, 1, 0) - w);
  const double e2 = std::abs(mixed_second(G, Z, 5e-3)(1, 0, 1, 0) - w);
  REQUIRE(e1 / e2 == Catch::Approx(4.0).epsilon(0.25));
}

TEST_CASE("hua operator annihilates constants", "[hua]") {
  std::mt19937_64 rng(5);
  const BallPoint Z = random_ball_point(2, 0.5, rng);
  const HuaResult r = hua_apply({2, 1, cplx(3.0, 0.0)}, [](const CMatrix&) { return cplx(1.0, 0.0); }, Z, 1e-3);
  REQUIRE(r.top.norm() <= 1e-10);
  REQUIRE(r.bottom.norm() <= 1e-10);
}

TEST_CASE("analytic kernel derivatives match finite differences", "[hua][kernel]") {
  std::mt19937_64 rng(6);
  for (const SpectralParams& p : {SpectralParams{1, 2, cplx(2.5, 0.0)}, SpectralParams{2, 1, cplx(3.0, 0.4)},
                                  SpectralParams{3, -1, cplx(3.5, 1.0)}}) {
    const BallPoint Z = random_ball_point(p.n, 0.5, rng);
    const CMatrix U = random_unitary(p.n, rng);
    const auto g = wirtinger_grad([&](const CMatrix& z) { return poisson_kernel(p, BallPoint(z), U); }, Z, 1e-4);
    const double scale = std::abs(poisson_kernel(p, Z, U));
    REQUIRE((g.d.transpose() - kernel_grad_analytic(p, Z, U)).norm() <= 1e-6 * scale);
    REQUIRE((g.dbar - kernel_dbar_analytic(p, Z, U)).norm() <= 1e-6 * scale);
  }
}

TEST_CASE("kernel gradient at the origin", "[hua][kernel]") {
  std::mt19937_64 rng(7);
  const SpectralParams p{2, 1, cplx(2.2, 0.5)};
  const CMatrix U = random_unitary(2, rng);
  const BallPoint zero(CMatrix::Zero(2, 2));
  REQUIRE((kernel_grad_analytic(p, zero, U) - p.alpha_plus() * U.adjoint()).norm() <= 1e-14);
}

TEST_CASE("hua residual on the disk", "[hua]") {
  // truncation grows with s; the tighter bound is for the classical range
  for (double s : {1.0, 1.5, 2.5}) {
    const SpectralParams p{1, 0, cplx(s, 0.0)};
    const HuaResidual r = hua_residual(p, BallPoint(CMatrix::Constant(1, 1, cplx(0.3, 0.2))),
                                       CMatrix::Constant(1, 1, std::polar(1.0, 0.7)), 1e-3);
    const double tol = s < 2.0 ? 1e-5 : 1e-4;
    REQUIRE(r.top.rel_error <= tol);
    REQUIRE(r.bottom.rel_error <= tol);
  }
}

TEST_CASE("property: hua residual of the kernel is O(h^2)", "[hua][property]") {
  std::mt19937_64 rng(8);
  for (const SpectralParams& p : {SpectralParams{1, 2, cplx(2.5, 0.0)}, SpectralParams{2, 1, cplx(3.0, 0.0)},
                                  SpectralParams{2, 0, cplx(2.5, 0.7)}, SpectralParams{2, -1, cplx(3.0, 1.0)}}) {
    const BallPoint Z = random_ball_point(p.n, 0.4, rng);
    const CMatrix U = random_unitary(p.n, rng);
    const HuaResidual a = hua_residual(p, Z, U, 2e-3);
    const HuaResidual b = hua_residual(p, Z, U, 1e-3);
    REQUIRE(b.pass());
    REQUIRE(a.top.rel_error / b.top.rel_error == Catch::Approx(4.0).epsilon(0.25));
    REQUIRE(a.bottom.rel_error / b.bottom.rel_error == Catch::Approx(4.0).epsilon(0.25));
  }
}

TEST_CASE("property: eigen-equation on diagonal slices", "[hua][property]") {
  std::mt19937_64 rng(9);
  const SpectralParams p{2, 1, cplx(2.5, 0.3)};
  for (double r : {0.2, 0.5}) {
    const HuaResidual h = hua_residual(p, BallPoint::scalar(2, r), random_unitary(2, rng), 1e-3);
    REQUIRE(h.pass());
  }
}

TEST_CASE("property: K-invariance", "[hua][property]") {
  std::mt19937_64 rng(10);
  const SpectralParams p{2, 1, cplx(3.0, 0.0)};
  for (int t = 0; t < 5; ++t) {
    const BallPoint Z = random_ball_point(2, 0.4, rng);
    const CMatrix U = random_unitary(2, rng);
    CMatrix V1 = random_unitary(2, rng), V2 = random_unitary(2, rng);
    V2 *= std::sqrt((V1 * V2.adjoint()).determinant());  // det(V1 V2*) = 1
    const BallPoint Zk(V1 * Z.z * V2.adjoint());
    const CMatrix Uk = V1 * U * V2.adjoint();
    REQUIRE(rel(poisson_kernel(p, Zk, Uk), poisson_kernel(p, Z, U)) <= 1e-12);
    const HuaResidual a = hua_residual(p, Z, U, 1e-3);
    const HuaResidual b = hua_residual(p, Zk, Uk, 1e-3);
    REQUIRE(a.pass());
    REQUIRE(b.pass());
  }
}

TEST_CASE("bottom block as printed does not satisfy the eigen-equation", "[hua]") {
  std::mt19937_64 rng(11);
  const SpectralParams p{2, 1, cplx(3.0, 0.0)};
  const BallPoint Z = random_ball_point(2, 0.5, rng);
  const CMatrix U = random_unitary(2, rng);
  REQUIRE(hua_residual(p, Z, U, 1e-3, 1e-4, HuaBottomForm::derived).bottom.pass);
  REQUIRE(hua_residual(p, Z, U, 1e-3, 1e-4, HuaBottomForm::as_printed).bottom.rel_error > 1e-2);
}

TEST_CASE("hua eigenvalue and margin guard", "[hua]") {
  REQUIRE(hua_eigenvalue({2, 1, cplx(3.0, 0.0)}) == cplx(2.0, 0.0));
  const BallPoint edge = BallPoint::scalar(2, 0.9995);
  REQUIRE_THROWS_AS(hua_residual({2, 0, cplx(2.0, 0.0)}, edge, CMatrix::Identity(2, 2), 1e-3), MarginError);
}
