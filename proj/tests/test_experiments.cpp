#include "test_support.hpp"

#include <sstream>

#include "matball/csv.hpp"
#include "matball/experiments.hpp"

using namespace matball;

TEST_CASE("default radii", "[experiments]") {
  const auto r = default_radii();
  REQUIRE(r.size() == 14);
  REQUIRE(r.front() == 0.5);
  REQUIRE(r.back() == 1.0 - std::ldexp(1.0, -14));
  REQUIRE_THROWS_AS(require_increasing({0.5, 0.5}), DomainError);
}

TEST_CASE("key lemma sweep on the disk", "[experiments][key-lemma]") {
  const SweepResult s = key_lemma_sweep({1, 0, cplx(1.5, 0.0)}, {{-2}, {-1}, {0}, {1}, {2}}, {0.9, 0.99, 0.999, 0.9999});
  REQUIRE(s.pass);
  for (const auto& row : s.rows)
    if (row.r == 0.9999) REQUIRE(std::abs(row.ratio - 1.0) <= 5e-2);
  REQUIRE_THROWS_AS(key_lemma_sweep({2, 0, cplx(0.5, 0.0)}, {{0, 0}}, {0.9}), DomainError);
}

TEST_CASE("kernel L1 norm at the origin and growth band", "[experiments][growth]") {
  REQUIRE(std::abs(kernel_l1_norm({2, 0, cplx(2.0, 0.0)}, 0.0, TorusGrid(8)) - 1.0) <= 1e-12);
  const SweepResult s = forelli_rudin_growth({1, 0, cplx(1.5, 0.0)}, {0.5, 0.9, 0.99});
  REQUIRE(s.pass);
}

TEST_CASE("norm sandwich single K-type limit", "[experiments][sandwich]") {
  const SpectralParams p{1, 0, cplx(1.5, 0.0)};
  std::vector<double> radii = default_radii();
  radii.push_back(0.9999);
  std::sort(radii.begin(), radii.end());
  const SweepResult s = norm_sandwich(p, KTypeFunction::single({0}), 2.0, radii);
  REQUIRE(s.pass);
  for (const auto& row : s.rows)
    if (row.r == 0.9999) REQUIRE(std::abs(row.ratio.real() - std::abs(c_function(p))) <= 5e-2 * std::abs(c_function(p)));
}

TEST_CASE("property: sandwich lower bound holds for p = 1 and p = 2", "[experiments][sandwich][property]") {
  for (double pexp : {1.0, 2.0})
    for (const SpectralParams& p : {SpectralParams{1, 1, cplx(2.5, 0.0)}, SpectralParams{2, 0, cplx(3.0, 0.0)}}) {
      KTypeFunction f(p.n);
      if (p.n == 1)
        f.add({0}, 1.0).add({1}, cplx(0.0, 0.5));
      else
        f.add({0, 0}, 1.0).add({1, 0}, 0.5);
      REQUIRE(norm_sandwich(p, f, pexp, default_radii()).pass);
    }
}

TEST_CASE("inversion", "[experiments][inversion]") {
  const std::vector<double> radii{0.9, 0.99, 0.999, 0.9999};
  const SweepResult zero = inversion_experiment({1, 0, cplx(1.5, 0.0)}, KTypeFunction(1), radii);
  for (const auto& row : zero.rows) REQUIRE(row.value == cplx(0.0, 0.0));
  const SweepResult s = inversion_experiment({2, 1, cplx(3.0, 0.0)}, KTypeFunction(2).add({0, 0}, 1.0).add({1, 0}, 1.0), radii);
  REQUIRE(s.pass);
  for (std::size_t i = 1; i < s.rows.size(); ++i) REQUIRE(std::abs(s.rows[i].value) <= std::abs(s.rows[i - 1].value));
}

TEST_CASE("eigen expansion against direct evaluation", "[experiments]") {
  KTypeFunction f1(1);
  f1.add({0}, 1.0).add({2}, cplx(0.3, -0.2));
  REQUIRE(eigen_expansion_check({1, 1, cplx(2.0, 0.5)}, f1, 0.6, TorusAngles({0.8})).pass);
  KTypeFunction f2(2);
  f2.add({0, 0}, 1.0).add({1, -1}, 0.5);
  REQUIRE(eigen_expansion_check({2, 0, cplx(3.0, 0.0)}, f2, 0.5, TorusAngles({0.4, 2.2})).pass);
}

TEST_CASE("property: sweeps are deterministic", "[experiments][property]") {
  auto render = [] {
    std::ostringstream os;
    write_sweep_rows(os, norm_sandwich({2, 1, cplx(2.5, 0.0)}, KTypeFunction(2).add({0, 0}, 1.0).add({1, -1}, 0.5), 2.0,
                                       {0.5, 0.9, 0.99}));
    return os.str();
  };
  REQUIRE(render() == render());
}
