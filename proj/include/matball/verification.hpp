#pragma once

// The verification suite: one runner per acceptance criterion, shared by the
// CLI (verify-all) and the acceptance test binary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "matball/boundary.hpp"
#include "matball/experiments.hpp"
#include "matball/hua.hpp"
#include "matball/identities.hpp"
#include "matball/special.hpp"
#include "matball/spherical.hpp"

namespace matball {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct VerifyOptions {
  int max_n = 2;  // largest rank in the quadrature-oracle comparison
  std::uint64_t seed = kDefaultSeed;
};

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  std::vector<CheckReport> reports;
  std::vector<SweepResult> sweeps;
};

namespace detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

template <class Body>
CriterionOutcome timed(int id, std::string title, Body&& body) {
  CriterionOutcome out;
  out.id = id;
  out.title = std::move(title);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("numerical error: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

inline std::vector<Signature> oracle_signatures(int n) {
  switch (n) {
    case 1:
      return {{-3}, {-1}, {0}, {1}, {2}, {3}};
    case 2:
      return {{0, 0}, {1, 0}, {1, -1}, {2, 1}, {3, -2}, {0, -3}, {3, 3}};
    default:
      return {{0, 0, 0}, {1, 0, 0}, {1, 0, -1}, {2, 1, 0}, {3, 1, -2}, {0, 0, -2}, {2, 2, -3}};
  }
}

}  // namespace detail

/// Determinant formula against the Weyl-quadrature oracle (grid from 48, doubled to self-consistency).
inline CriterionOutcome criterion_oracle(const VerifyOptions& opt) {
  return detail::timed(1, "determinant formula matches quadrature oracle", [&](CriterionOutcome& out) {
    double worst = 0.0;
    int count = 0;
    bool ok = true;
    for (int n = 1; n <= std::min(opt.max_n, 3); ++n) {
      for (int nu : {0, 1, 2}) {
        for (double ds : {0.5, 1.5}) {
          const SpectralParams p{n, nu, cplx(n + ds, 0.0)};
          for (const auto& m : detail::oracle_signatures(n)) {
            for (double r : {0.1, 0.3, 0.5, 0.7}) {
              const RefinedValue o = refine_spherical_oracle(p, m, r, 48);
              const cplx v = phi_big(p, m, r);
              auto rep = make_report("oracle " + p.describe() + " m=" + m.str() + " r=" + format_double(r), v, o.value, 1e-6);
              rep.pass = rep.pass && o.converged;
              worst = std::max(worst, rep.rel_error);
              ok = ok && rep.pass;
              ++count;
              out.reports.push_back(rep);
            }
          }
        }
      }
    }
    out.pass = ok;
    out.detail = std::to_string(count) + " comparisons, n<=" + std::to_string(std::min(opt.max_n, 3)) +
                 ", max rel error " + detail::sci(worst) + " (tol 1e-6)";
  });
}

/// Phi_0(0) = 1 exactly and Phi_m(0) = 0 for m != 0.
inline CriterionOutcome criterion_anchor(const VerifyOptions&) {
  return detail::timed(2, "normalization anchor at the origin", [&](CriterionOutcome& out) {
    bool ok = true;
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      for (const SpectralParams& p : {SpectralParams{n, 0, cplx(n + 0.5, 0.0)}, SpectralParams{n, 1, cplx(n + 1.0, 0.7)},
                                      SpectralParams{n, -2, cplx(n + 2.5, 0.0)}}) {
        const Signature zero(std::vector<int>(static_cast<std::size_t>(n), 0));
        const cplx v0 = phi_big(p, zero, 0.0);
        ok = ok && v0 == cplx(1.0, 0.0);
        for (const auto& m : signatures_up_to(n, 2)) {
          if (m.is_zero()) continue;
          const double a = std::abs(phi_big(p, m, 0.0));
          worst = std::max(worst, a);
          ok = ok && a <= 1e-10;
        }
      }
    }
    out.pass = ok;
    out.detail = "Phi_0(0) == 1 exactly; max |Phi_m(0)| over m != 0 = " + detail::sci(worst);
  });
}

/// Signatures used by the asymptotic sweep: all |m_i| <= 2 plus two wider ones (>= 10 in total).
inline std::vector<Signature> key_lemma_signatures(int n) {
  if (n == 1) {
    std::vector<Signature> s;
    for (int k = -5; k <= 5; ++k) s.push_back({k});
    return s;
  }
  auto s = signatures_up_to(n, 2);
  s.push_back(Signature(std::vector<int>{3, 1}));
  s.push_back(Signature(std::vector<int>{3, -3}));
  return s;
}

inline std::vector<SpectralParams> key_lemma_params() {
  return {{1, 0, cplx(1.5, 0.0)}, {1, 2, cplx(2.0, 0.5)}, {2, 0, cplx(3.0, 0.0)},  {2, 2, cplx(4.0, 0.0)},
          {2, 1, cplx(2.5, 0.0)}, {2, 0, cplx(2.5, 1.0)}, {2, -1, cplx(3.5, 0.0)}};
}

/// |ratio - 1| <= 5e-2 at r = 0.9999, decreasing from 0.99, uniformly over >= 10 signatures.
inline CriterionOutcome criterion_key_lemma(const VerifyOptions&) {
  return detail::timed(3, "Key Lemma asymptotics, uniform over signatures", [&](CriterionOutcome& out) {
    bool ok = true;
    double worst = 0.0;
    std::size_t min_sigs = 1000;
    for (const auto& p : key_lemma_params()) {
      const auto sigs = key_lemma_signatures(p.n);
      min_sigs = std::min(min_sigs, sigs.size());
      SweepResult s = key_lemma_sweep(p, sigs, {0.99, 0.999, 0.9999});
      for (const auto& row : s.rows)
        if (row.r == 0.9999) worst = std::max(worst, std::abs(row.ratio - 1.0));
      ok = ok && s.pass;
      out.sweeps.push_back(std::move(s));
    }
    out.pass = ok && min_sigs >= 10;
    out.detail = std::to_string(key_lemma_params().size()) + " parameter points, >= " + std::to_string(min_sigs) +
                 " signatures each; max |ratio-1| at r=0.9999 = " + detail::sci(worst) + " (tol 5e-2)";
  });
}

struct HuaCase {
  SpectralParams p;
  BallPoint Z;
  CMatrix U;
};

inline std::vector<HuaCase> hua_cases(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<HuaCase> c;
  c.push_back({{1, 0, cplx(1.0, 0.0)}, BallPoint(CMatrix::Constant(1, 1, cplx(0.3, 0.2))), CMatrix::Identity(1, 1)});
  c.push_back({{1, 2, cplx(2.5, 0.0)}, BallPoint(CMatrix::Constant(1, 1, cplx(0.4, 0.0))), CMatrix::Identity(1, 1)});
  c.push_back({{1, -1, cplx(1.5, 0.8)}, BallPoint(CMatrix::Constant(1, 1, cplx(-0.2, 0.35))),
               CMatrix::Constant(1, 1, std::polar(1.0, 2.0))});
  c.push_back({{2, 1, cplx(3.0, 0.0)}, random_ball_point(2, 0.5, rng), CMatrix::Identity(2, 2)});
  c.push_back({{2, 0, cplx(2.5, 0.7)}, random_ball_point(2, 0.4, rng), random_unitary(2, rng)});
  c.push_back({{2, -1, cplx(3.0, 1.0)}, random_ball_point(2, 0.4, rng), random_unitary(2, rng)});
  c.push_back({{2, 2, cplx(4.2, 0.0)}, random_ball_point(2, 0.3, rng), random_unitary(2, rng)});
  return c;
}

/// Both Hua blocks within 1e-4 at h = 1e-3, with the h -> h/2 error ratio in [3, 5].
inline CriterionOutcome criterion_hua(const VerifyOptions& opt) {
  return detail::timed(4, "Hua eigen-equation by finite differences", [&](CriterionOutcome& out) {
    bool ok = true;
    double worst = 0.0, rmin = 1e9, rmax = 0.0;
    const auto cases = hua_cases(opt.seed);
    for (const auto& c : cases) {
      const HuaResidual a = hua_residual(c.p, c.Z, c.U, kDefaultFdStep);
      const HuaResidual b = hua_residual(c.p, c.Z, c.U, kDefaultFdStep / 2);
      for (const auto& [ra, rb] : {std::pair{a.top, b.top}, std::pair{a.bottom, b.bottom}}) {
        const double ratio = ra.rel_error / rb.rel_error;
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
        worst = std::max(worst, ra.rel_error);
        ok = ok && ra.pass && ratio >= 3.0 && ratio <= 5.0;
        CheckReport rep = ra;
        rep.name += " " + c.p.describe();
        out.reports.push_back(rep);
      }
    }
    out.pass = ok;
    out.detail = std::to_string(cases.size()) + " cases; max residual at h=1e-3 " + detail::sci(worst) +
                 " (tol 1e-4); Richardson ratios in [" + detail::sci(rmin) + ", " + detail::sci(rmax) + "]";
  });
}

/// 100 seeded guarded draws per n in {2, 3, 4} and r in {0.3, 0.6, 0.9}.
inline CriterionOutcome criterion_lemma_a(const VerifyOptions& opt) {
  return detail::timed(5, "Lemma A determinant identity", [&](CriterionOutcome& out) {
    std::mt19937_64 rng(opt.seed);
    double worst = 0.0;
    int count = 0;
    for (int n : {2, 3, 4}) {
      for (double r : {0.3, 0.6, 0.9}) {
        for (int t = 0; t < 100; ++t) {
          const AppendixParams ap = draw_appendix_params(n, rng);
          const DeterminantSides s = lemma_a_sides(ap, r);
          worst = std::max(worst, relative_error(s.rhs, s.lhs));
          ++count;
        }
      }
    }
    out.pass = worst <= 1e-8;
    out.detail = std::to_string(count) + " draws (seed " + std::to_string(opt.seed) + "), max rel error " +
                 detail::sci(worst) + " (tol 1e-8)";
  });
}

/// |ratio - 1| <= 5e-2 at r = 1 - 1e-5 and first-order convergence in 1 - r^2, n in {1, 2, 3}.
inline CriterionOutcome criterion_lemma_b(const VerifyOptions& opt) {
  return detail::timed(6, "Lemma B asymptotics (sign +1)", [&](CriterionOutcome& out) {
    std::mt19937_64 rng(opt.seed + 1);
    bool ok = true;
    double worst = 0.0, worst_order = 0.0;
    std::ostringstream printed;
    const double r1 = 1.0 - 1e-3, r2 = 1.0 - 1e-4, r3 = 1.0 - 1e-5;
    const double x1 = one_minus_r2(r1), x2 = one_minus_r2(r2), x3 = one_minus_r2(r3);
    for (int n = 1; n <= 3; ++n) {
      for (int t = 0; t < 3; ++t) {
        const AppendixParams ap = draw_appendix_params(n, rng);
        const cplx d1 = lemma_b_ratio(ap, r1) - 1.0;
        const cplx d2 = lemma_b_ratio(ap, r2) - 1.0;
        const cplx d3 = lemma_b_ratio(ap, r3) - 1.0;
        const cplx extrap = d1 + (d2 - d1) * (x3 - x1) / (x2 - x1);
        const double order = std::abs(d3) / std::abs(extrap);
        worst = std::max(worst, std::abs(d3));
        worst_order = std::max(worst_order, order);
        ok = ok && std::abs(d3) <= 5e-2 && order <= 10.0;
        if (t == 0) {
          const cplx lp = lemma_b_ratio(ap, r3, LemmaBSign::printed);
          printed << " n=" << n << ":" << (lp.real() > 0 ? "+1" : "-1");
        }
      }
    }
    out.pass = ok;
    out.detail = "max |ratio-1| at r=1-1e-5 " + detail::sci(worst) + " (tol 5e-2); max |dev|/|linear extrapolation| " +
                 detail::sci(worst_order) + " (tol 10); printed sign limits" + printed.str();
  });
}

/// The c-function constant identity on its default grid, the Pochhammer product identity and the induction identity.
inline CriterionOutcome criterion_identities(const VerifyOptions&) {
  return detail::timed(7, "c-function constant identity and auxiliary identities", [&](CriterionOutcome& out) {
    bool ok = true;
    double worst = 0.0;
    int excluded = 0, count = 0;
    for (int n = 1; n <= 3; ++n) {
      for (int nu = -3; nu <= 3; ++nu) {
        for (cplx s : {cplx(n - 0.4, 0.0), cplx(n + 1.0, 0.0), cplx(n + 2.5, 0.0), cplx(n + 1.0, 1.0)}) {
          try {
            auto rep = e9_identity_check({n, nu, s}, 1e-9);
            worst = std::max(worst, rep.rel_error);
            ok = ok && rep.pass;
            ++count;
            out.reports.push_back(rep);
          } catch (const PoleError&) {
            ++excluded;
          }
        }
      }
    }
    for (int n = 1; n <= 6; ++n) {
      for (cplx a : {cplx(2.7, 0.3), cplx(-1.3, 0.9), cplx(5.5, -2.0)}) {
        auto rep = pochhammer_product_check(a, n, 1e-9);
        worst = std::max(worst, rep.rel_error);
        ok = ok && rep.pass;
        ++count;
        out.reports.push_back(rep);
      }
      for (cplx s : {cplx(3.7, 0.0), cplx(2.3, 1.1), cplx(6.25, 0.0), cplx(-0.5, 0.3)}) {
        auto rep = induction_identity_check(s, n, 1e-9);
        worst = std::max(worst, rep.rel_error);
        ok = ok && rep.pass;
        ++count;
        out.reports.push_back(rep);
      }
    }
    out.pass = ok;
    out.detail = std::to_string(count) + " checks (" + std::to_string(excluded) + " pole-excluded), max rel error " +
                 detail::sci(worst) + " (tol 1e-9)";
  });
}

/// Sandwich radii: the default geometric grid plus r = 0.9999.
inline std::vector<double> sandwich_radii() {
  auto r = default_radii();
  r.push_back(0.9999);
  std::sort(r.begin(), r.end());
  return r;
}

struct SandwichCase {
  SpectralParams p;
  KTypeFunction f;
  bool single = false;
};

inline std::vector<SandwichCase> sandwich_cases() {
  std::vector<SandwichCase> c;
  for (const SpectralParams& p : {SpectralParams{1, 0, cplx(1.5, 0.0)}, SpectralParams{1, 1, cplx(2.5, 0.0)},
                                  SpectralParams{1, -1, cplx(1.5, 0.5)}}) {
    c.push_back({p, KTypeFunction::single({0}), true});
    c.push_back({p, KTypeFunction::single({2}, cplx(0.0, 2.0)), true});
    c.push_back({p, KTypeFunction(1).add({0}, 1.0).add({-1}, cplx(0.5, -0.5)), false});
  }
  for (const SpectralParams& p : {SpectralParams{2, 0, cplx(3.0, 0.0)}, SpectralParams{2, 1, cplx(2.5, 0.0)},
                                  SpectralParams{2, 2, cplx(4.0, 0.5)}}) {
    c.push_back({p, KTypeFunction::single({0, 0}), true});
    c.push_back({p, KTypeFunction::single({1, 0}), true});
    c.push_back({p, KTypeFunction(2).add({0, 0}, 1.0).add({1, -1}, cplx(0.0, 0.5)), false});
  }
  return c;
}

/// |c| ||f||_2 <= (1 + 1e-3) ||P f||_{*,2}; single K-types: ratio at r = 0.9999 within 5e-2 of |c|.
inline CriterionOutcome criterion_sandwich(const VerifyOptions&) {
  return detail::timed(8, "Hardy-norm lower bound and single-type limit", [&](CriterionOutcome& out) {
    bool ok = true;
    double worst_single = 0.0;
    const auto cases = sandwich_cases();
    for (const auto& c : cases) {
      SweepResult s = norm_sandwich(c.p, c.f, 2.0, sandwich_radii());
      ok = ok && s.pass;
      if (c.single) {
        const double cabs = std::abs(c_function(c.p));
        for (const auto& row : s.rows)
          if (row.r == 0.9999) {
            const double dev = std::abs(row.ratio.real() - cabs) / cabs;
            worst_single = std::max(worst_single, dev);
            ok = ok && dev <= 5e-2;
          }
      }
      out.sweeps.push_back(std::move(s));
    }
    out.pass = ok;
    out.detail = std::to_string(cases.size()) + " configurations; max single-type |ratio-|c||/|c| at r=0.9999 " +
                 detail::sci(worst_single) + " (tol 5e-2)";
  });
}

/// ||g_r - f||_2 decreasing over {0.9, 0.99, 0.999, 0.9999}, ending <= 1e-2 ||f||_2.
inline CriterionOutcome criterion_inversion(const VerifyOptions&) {
  return detail::timed(9, "L2 inversion", [&](CriterionOutcome& out) {
    bool ok = true;
    double worst = 0.0;
    std::vector<std::pair<SpectralParams, KTypeFunction>> cases = {
        {{1, 0, cplx(1.5, 0.0)}, KTypeFunction::single({0})},
        {{2, 1, cplx(3.0, 0.0)}, KTypeFunction(2).add({0, 0}, 1.0).add({1, 0}, 1.0)},
        {{2, 0, cplx(2.5, 1.0)}, KTypeFunction(2).add({0, 0}, 1.0).add({1, -1}, cplx(0.3, 0.4))},
        {{2, 2, cplx(4.0, 0.0)}, KTypeFunction::single({3, 1})}};
    for (const auto& [p, f] : cases) {
      SweepResult s = inversion_experiment(p, f, {0.9, 0.99, 0.999, 0.9999});
      ok = ok && s.pass;
      worst = std::max(worst, s.rows.back().ratio.real());
      out.sweeps.push_back(std::move(s));
    }
    out.pass = ok;
    out.detail = std::to_string(cases.size()) + " configurations; max ||g_r - f|| / ||f|| at r=0.9999 " +
                 detail::sci(worst) + " (tol 1e-2)";
  });
}

/// int |P(rI,U)| dU / (1-r^2)^{n(n-nu-Re s)/2} within a factor 10 over r in {0.5, 0.9, 0.99}.
inline CriterionOutcome criterion_growth(const VerifyOptions&) {
  return detail::timed(10, "kernel L1 growth band", [&](CriterionOutcome& out) {
    bool ok = true;
    double widest = 0.0;
    for (int n : {1, 2}) {
      for (int nu : {0, 1}) {
        for (double ds : {-0.5, 0.5, 1.5}) {
          SweepResult s = forelli_rudin_growth({n, nu, cplx(n + ds, 0.0)}, {0.5, 0.9, 0.99});
          double lo = INFINITY, hi = 0.0;
          for (const auto& row : s.rows) lo = std::min(lo, row.ratio.real()), hi = std::max(hi, row.ratio.real());
          widest = std::max(widest, hi / lo);
          ok = ok && s.pass;
          out.sweeps.push_back(std::move(s));
        }
      }
    }
    out.pass = ok;
    out.detail = "12 parameter points; widest max/min band " + detail::sci(widest) + " (tol 10)";
  });
}

inline std::vector<std::function<CriterionOutcome(const VerifyOptions&)>> all_criteria() {
  return {criterion_oracle,     criterion_anchor,     criterion_key_lemma, criterion_hua,        criterion_lemma_a,
          criterion_lemma_b,    criterion_identities, criterion_sandwich,  criterion_inversion, criterion_growth};
}

}  // namespace matball
