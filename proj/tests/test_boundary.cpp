#include "test_support.hpp"

#include <random>

#include "matball/boundary.hpp"
#include "matball/hua.hpp"
#include "oracles/oracle_values.hpp"

using namespace matball;

namespace {

TorusAngles random_angles(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<double> t(static_cast<std::size_t>(n));
  for (auto& v : t) v = u(rng);
  return TorusAngles(t);
}

}  // namespace

TEST_CASE("ball point and torus validation", "[boundary]") {
  REQUIRE_THROWS_AS(BallPoint(CMatrix::Identity(2, 2)), DomainError);
  REQUIRE_NOTHROW(BallPoint::scalar(3, 0.99));
  REQUIRE_THROWS_AS(TorusAngles({-0.1}), DomainError);
  REQUIRE_THROWS_AS(TorusGrid(4), DomainError);
}

TEST_CASE("poisson kernel closed forms", "[boundary][kernel]") {
  std::mt19937_64 rng(1);
  const SpectralParams p{2, 1, cplx(2.6, 0.4)};
  REQUIRE(rel(poisson_kernel(p, BallPoint(CMatrix::Zero(2, 2)), random_unitary(2, rng)), 1.0) <= 1e-15);

  const SpectralParams d{1, 1, cplx(1.5, 0.3)};
  const BallPoint z(CMatrix::Constant(1, 1, cplx(0.5, 0.2)));
  REQUIRE(rel(poisson_kernel(d, z, TorusAngles({1.1})), oracle::kKernelDisk) <= 1e-13);

  // Z = rI, U diagonal: product of disk factors.
  const TorusAngles th({0.4, 2.9});
  const cplx prod = kernel_factor(p, 0.7, 0.4) * kernel_factor(p, 0.7, 2.9);
  REQUIRE(rel(poisson_kernel(p, BallPoint::scalar(2, 0.7), th), prod) <= 1e-13);
}

TEST_CASE("property: kernel is positive real for nu = 0", "[boundary][kernel][property]") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> s(0.5, 4.0);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    const SpectralParams p{n, 0, cplx(s(rng), 0.0)};
    const cplx v = poisson_kernel(p, random_ball_point(n, 0.8, rng), random_unitary(n, rng));
    REQUIRE(v.real() > 0.0);
    REQUIRE(std::abs(v.imag()) <= 1e-12 * v.real());
  }
}

TEST_CASE("schur character", "[boundary]") {
  std::mt19937_64 rng(4);
  const TorusAngles t({0.3, 1.9});
  REQUIRE(rel(schur_character({0, 0}, t), 1.0) <= 1e-15);
  REQUIRE(rel(schur_character({1, 0}, t), (std::polar(1.0, 0.3) + std::polar(1.0, 1.9)) / 2.0) <= 1e-14);
  REQUIRE_THROWS_AS(schur_character({1, 0}, TorusAngles({1.0, 1.0})), CoincidentAnglesError);

  // s_{(2,1,0)} = sum over the 8 semistandard tableaux of shape (2,1): monomials x^a with
  // a a permutation of (2,1,0) (6 terms) plus 2 x1 x2 x3.
  const TorusAngles u({0.2, 2.1, 4.4});
  cplx x[3];
  for (int i = 0; i < 3; ++i) x[i] = std::polar(1.0, u.theta[static_cast<std::size_t>(i)]);
  cplx brute = 2.0 * x[0] * x[1] * x[2];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) brute += x[i] * x[i] * x[j];
  REQUIRE(rel(schur_character({2, 1, 0}, u), brute / 8.0) <= 1e-13);
}

TEST_CASE("property: normalized characters are bounded by 1", "[boundary][property]") {
  std::mt19937_64 rng(6);
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : signatures_up_to(n, 3))
      for (int t = 0; t < 20; ++t) REQUIRE(std::abs(schur_character(m, random_angles(n, rng))) <= 1.0 + 1e-10);
  // tends to 1 as the angles shrink to 0
  for (double e : {1e-2, 1e-3, 1e-4}) {
    const cplx v = schur_character({2, 1, -1}, TorusAngles({e, 2 * e, 3 * e}));
    REQUIRE(std::abs(v - 1.0) <= 20 * e);
  }
}

TEST_CASE("weyl integration normalization and orthogonality", "[boundary][quadrature]") {
  for (int n = 1; n <= 3; ++n) {
    for (int N : {8, 12, 16}) {
      const TorusGrid g(N);
      REQUIRE(rel(weyl_integrate([](const TorusAngles&) { return cplx(1.0, 0.0); }, g, n), 1.0) <= 1e-12);
      for (const auto& m : signatures_up_to(n, 1)) {
        if (m.is_zero()) continue;
        const cplx v = weyl_integrate([&](const TorusAngles& t) { return schur_character(m, t); }, g, n);
        REQUIRE(std::abs(v) <= 1e-10);
      }
    }
  }
  const cplx sq = weyl_integrate([](const TorusAngles& t) { return cplx(std::norm(schur_character({1, 0}, t)), 0.0); },
                                 TorusGrid(8), 2);
  REQUIRE(rel(sq, 0.25) <= 1e-12);
}

TEST_CASE("property: weyl integration is exact on low-degree trigonometric polynomials",
          "[boundary][quadrature][property]") {
  // <phi_a, phi_b> = delta_ab / d_a^2 for degrees well below the grid size.
  for (int n = 1; n <= 3; ++n) {
    const auto sigs = signatures_up_to(n, 2);
    const TorusGrid g(4 * 2 + 2 * n + 2);
    for (const auto& a : sigs)
      for (const auto& b : sigs) {
        const cplx v = weyl_integrate(
            [&](const TorusAngles& t) { return schur_character(a, t) * std::conj(schur_character(b, t)); }, g, n);
        const double d = static_cast<double>(weyl_dimension(a));
        const cplx expect = a == b ? cplx(1.0 / (d * d), 0.0) : cplx(0.0, 0.0);
        REQUIRE(std::abs(v - expect) <= 1e-12);
      }
  }
}

TEST_CASE("spherical oracle", "[boundary][oracle]") {
  const SpectralParams p{2, 1, cplx(3.0, 0.0)};
  REQUIRE(rel(spherical_oracle(p, {0, 0}, 0.0, TorusGrid(16)), 1.0) <= 1e-13);
  const RefinedValue o = refine_spherical_oracle(p, {2, -1}, 0.6, 48);
  REQUIRE(o.converged);
  REQUIRE(o.last_change <= 1e-8 * std::abs(o.value) + 1e-14);
  REQUIRE(rel(o.value, phi_big(p, {2, -1}, 0.6)) <= 1e-8);
  REQUIRE_THROWS_AS(spherical_oracle(p, {0, 0}, 0.99, TorusGrid(64)), ResolutionError);
}

TEST_CASE("property: kernel integral equals the zero K-type", "[boundary][oracle][property]") {
  for (int n = 1; n <= 3; ++n) {
    const SpectralParams p{n, n % 2, cplx(n + 0.7, 0.3)};
    for (double r : {0.2, 0.5, 0.7}) {
      const Signature zero(std::vector<int>(static_cast<std::size_t>(n), 0));
      const RefinedValue direct = refine_by_doubling(
          [&](const TorusGrid& g) {
            return weyl_integrate([&](const TorusAngles& t) { return poisson_kernel(p, BallPoint::scalar(n, r), t); }, g, n);
          },
          24, 192);
      REQUIRE(direct.converged);
      REQUIRE(rel(direct.value, phi_big(p, zero, r)) <= 1e-8);
    }
  }
}

TEST_CASE("property: oracle self-consistent under grid doubling", "[boundary][oracle][property]") {
  for (int n = 1; n <= 3; ++n) {
    const SpectralParams p{n, 2, cplx(n + 1.5, 0.0)};
    for (const auto& m : signatures_up_to(n, 1)) {
      const RefinedValue o = refine_spherical_oracle(p, m, 0.7, 48);
      REQUIRE(o.converged);
    }
  }
}

TEST_CASE("fourier modes of the disk factor", "[boundary][kernel]") {
  REQUIRE(fourier_mode_check({1, 0, cplx(1.0, 0.0)}, 0, 0.0, 16).rel_error <= 1e-15);
  const SpectralParams p{2, 1, cplx(3.0, 0.0)};
  REQUIRE(fourier_mode_check(p, 2, 0.6, 512).pass);
  REQUIRE(fourier_mode_check(p, -3, 0.6, 512).pass);
  REQUIRE(fourier_mode_check({1, -2, cplx(1.5, 0.7)}, -4, 0.8, 512).pass);
}

TEST_CASE("hardy norm of the constant at the origin", "[boundary]") {
  const SpectralParams p{2, 1, cplx(2.5, 0.0)};
  const double v = hardy_norm(p, [](double, const TorusAngles&) { return cplx(1.0, 0.0); }, 2.0, 0.0, TorusGrid(8));
  REQUIRE(std::abs(v - 1.0) <= 1e-12);
}
