#pragma once

// Command-line front end. The spectral parameter is passed as s = i*lambda, never as lambda.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "matball/csv.hpp"
#include "matball/verification.hpp"

namespace matball {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExitCode : int { pass = 0, fail = 1, usage = 2, numerical = 3 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"phi",     "kernel",        "hua-check", "lemma-a",
                                                 "lemma-b", "e9",            "key-lemma", "forelli-rudin",
                                                 "sandwich", "invert",       "verify-all"};
  return names;
}

struct RunConfig {
  std::string command;
  int n = 2;
  int nu = 0;
  double s_re = 0.0;
  double s_im = 0.0;
  bool s_given = false;
  bool n_given = false;
  std::vector<double> radii;
  int grid = 0;  // 0: command default
  double fd_step = kDefaultFdStep;
  std::uint64_t seed = kDefaultSeed;
  int max_m = -1;  // -1: command default
  double pexp = 2.0;
  int draws = 0;  // 0: command default
  bool extended = false;
  std::string out;

  cplx s() const { return {s_re, s_im}; }
  SpectralParams params() const { return {n, nu, s()}; }
};

/// Parses "a", "bi", "a+bi", "a-bi" (also with j, spaces ignored).
inline cplx parse_complex(std::string text) {
  std::erase(text, ' ');
  static const std::regex full(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)[ij])?$)");
  static const std::regex pure_imag(R"(^([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)[ij]$)");
  std::smatch mt;
  auto coef = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  if (std::regex_match(text, mt, pure_imag)) return {0.0, coef(mt[1].str())};
  if (!text.empty() && std::regex_match(text, mt, full)) {
    const double re = mt[1].matched ? std::stod(mt[1].str()) : 0.0;
    const double im = mt[2].matched ? coef(mt[2].str()) : 0.0;
    if (mt[1].matched || mt[2].matched) return {re, im};
  }
  throw UsageError("cannot parse complex number '" + text + "' (expected a, a+bi or a-bi)");
}

inline std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--radii: cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--radii: empty list");
  return out;
}

namespace detail {

inline bool needs_asymptotic_range(const std::string& c) {
  return c == "key-lemma" || c == "sandwich" || c == "invert" || c == "forelli-rudin";
}

inline void validate(RunConfig& c) {
  const bool appendix = c.command == "lemma-a" || c.command == "lemma-b";
  const int n_max = appendix ? 4 : 3;
  if (c.n < 1 || c.n > n_max)
    throw UsageError("--n must lie in 1.." + std::to_string(n_max) + " for " + c.command);
  if (c.command == "lemma-a" && c.n < 2) throw UsageError("lemma-a requires n >= 2");
  if (!c.s_given) c.s_re = c.n + 1.0, c.s_im = 0.0;
  const SpectralParams p = c.params();
  if (needs_asymptotic_range(c.command) && !p.in_asymptotic_range())
    throw UsageError(c.command + " requires Re(s) > n - 1, with s = i*lambda (got Re(s) = " + format_double(c.s_re) +
                     ", n = " + std::to_string(c.n) + ")");
  if (c.command == "key-lemma" && !p.in_generic_set())
    throw UsageError("key-lemma requires s outside the lattice n - 2 +- nu - 2k, k >= 1");
  for (std::size_t i = 0; i < c.radii.size(); ++i) {
    const double r = c.radii[i];
    if (!(r > 0.0 && r < 1.0)) throw UsageError("--radii: every radius must lie in (0, 1)");
    if (i > 0 && !(r > c.radii[i - 1])) throw UsageError("--radii: radii must be strictly increasing");
  }
  if (c.grid != 0 && c.grid < 8) throw UsageError("--grid must be >= 8");
  if (!(c.fd_step > 0.0 && c.fd_step < 0.1)) throw UsageError("--fd-step must lie in (0, 0.1)");
  if (c.max_m > kMaxSignaturePart) throw UsageError("--max-m must be <= 50");
  if (c.max_m < -1) throw UsageError("--max-m must be >= 0");
  if (!(c.pexp >= 1.0)) throw UsageError("--p must be >= 1");
  if (c.draws < 0) throw UsageError("--draws must be >= 0");
}

}  // namespace detail

/// Builds a validated RunConfig from argv (argv[0] is the program name). Throws UsageError.
inline RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"matball: harmonic analysis on the matrix ball"};
  app.require_subcommand(1);
  std::string s_text, radii_text;
  std::optional<double> s_re, s_im;
  std::vector<CLI::App*> subs;
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--n", c.n, "rank n");
    sub->add_option("--nu", c.nu, "integer nu");
    sub->add_option("--s", s_text, "spectral parameter s = i*lambda, as a+bi");
    sub->add_option("--s-re", s_re, "Re(s), s = i*lambda");
    sub->add_option("--s-im", s_im, "Im(s), s = i*lambda");
    sub->add_option("--radii", radii_text, "comma-separated radii in (0,1)");
    sub->add_option("--grid", c.grid, "torus grid size N");
    sub->add_option("--fd-step", c.fd_step, "finite-difference step h");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--out", c.out, "CSV output path (default: stdout)");
    sub->add_option("--max-m", c.max_m, "signature truncation |m_i| <= M");
    sub->add_option("--p", c.pexp, "Hardy exponent p >= 1");
    sub->add_option("--draws", c.draws, "random draws per radius");
    if (name == "verify-all") sub->add_flag("--extended", c.extended, "include rank 3 in the oracle comparison");
    subs.push_back(sub);
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    c.command = sub->get_name();
    c.n_given = sub->count("--n") > 0;
    if (!s_text.empty() && (s_re || s_im)) throw UsageError("give either --s or --s-re/--s-im, not both");
    if (!s_text.empty()) {
      const cplx s = parse_complex(s_text);
      c.s_re = s.real(), c.s_im = s.imag(), c.s_given = true;
    } else if (s_re || s_im) {
      c.s_re = s_re.value_or(0.0), c.s_im = s_im.value_or(0.0), c.s_given = true;
    }
    if (!radii_text.empty()) c.radii = parse_radii(radii_text);
  }
  detail::validate(c);
  return c;
}

inline RunConfig parse_args(int argc, const char* const* argv) {
  return parse_args(std::vector<std::string>(argv, argv + argc));
}

inline std::vector<std::pair<std::string, std::string>> config_header(const RunConfig& c) {
  return {{"command", c.command},
          {"n", std::to_string(c.n)},
          {"nu", std::to_string(c.nu)},
          {"s", csv_number(c.s_re) + (c.s_im < 0 ? "" : "+") + csv_number(c.s_im) + "i"},
          {"radii", format_radii(c.radii)},
          {"grid", std::to_string(c.grid)},
          {"fd_step", csv_number(c.fd_step)},
          {"seed", std::to_string(c.seed)},
          {"max_m", std::to_string(c.max_m)},
          {"p", csv_number(c.pexp)},
          {"draws", std::to_string(c.draws)},
          {"extended", c.extended ? "1" : "0"}};
}

/// Deterministic test function: sum over |m_i| <= M of phi_m / (1 + sum |m_i|).
inline KTypeFunction default_test_function(int n, int max_m) {
  KTypeFunction f(n);
  for (const auto& m : signatures_up_to(n, max_m)) {
    int w = 0;
    for (int v : m.parts) w += std::abs(v);
    f.add(m, 1.0 / (1.0 + w));
  }
  return f;
}

namespace detail {

inline void with_defaults(RunConfig& c, std::vector<double> radii, int grid, int max_m, int draws = 0) {
  if (c.radii.empty()) c.radii = std::move(radii);
  if (c.grid == 0) c.grid = grid;
  if (c.max_m < 0) c.max_m = max_m;
  if (c.draws == 0) c.draws = draws;
}

inline bool all_pass(const std::vector<CheckReport>& reps) {
  return std::all_of(reps.begin(), reps.end(), [](const CheckReport& r) { return r.pass; });
}

inline bool run_reports(RunConfig& c, std::ostream& os) {
  std::vector<CheckReport> reps;
  const SpectralParams p = c.params();
  if (c.command == "phi") {
    with_defaults(c, {0.1, 0.3, 0.5, 0.7}, 48, 2);
    for (const auto& m : signatures_up_to(c.n, c.max_m))
      for (double r : c.radii) {
        const RefinedValue o = refine_spherical_oracle(p, m, r, c.grid);
        auto rep = make_report("phi m=" + m.str() + " r=" + format_double(r), phi_big(p, m, r), o.value, 1e-6);
        rep.pass = rep.pass && o.converged;
        reps.push_back(rep);
      }
  } else if (c.command == "kernel") {
    with_defaults(c, {0.3, 0.6, 0.9}, 256, 3);
    for (double r : c.radii) {
      check_resolution(r, TorusGrid(c.grid));
      for (int k = -c.max_m; k <= c.max_m; ++k) reps.push_back(fourier_mode_check(p, k, r, c.grid));
    }
  } else if (c.command == "hua-check") {
    with_defaults(c, {0.3}, 0, 0, 3);
    std::mt19937_64 rng(c.seed);
    for (double r : c.radii)
      for (int t = 0; t < c.draws; ++t) {
        const BallPoint Z = random_ball_point(c.n, r, rng);
        const CMatrix U = random_unitary(c.n, rng);
        const HuaResidual h = hua_residual(p, Z, U, c.fd_step);
        reps.push_back(h.top);
        reps.push_back(h.bottom);
      }
  } else if (c.command == "lemma-a") {
    with_defaults(c, {0.3, 0.6, 0.9}, 0, 0, 100);
    std::mt19937_64 rng(c.seed);
    for (double r : c.radii)
      for (int t = 0; t < c.draws; ++t) {
        const AppendixParams ap = draw_appendix_params(c.n, rng);
        const DeterminantSides s = lemma_a_sides(ap, r);
        reps.push_back(make_report("lemma_a r=" + format_double(r) + " draw=" + std::to_string(t), s.lhs, s.rhs, 1e-8));
      }
  } else if (c.command == "lemma-b") {
    with_defaults(c, {1.0 - 1e-3, 1.0 - 1e-4, 1.0 - 1e-5}, 0, 0, 3);
    std::mt19937_64 rng(c.seed);
    for (int t = 0; t < c.draws; ++t) {
      const AppendixParams ap = draw_appendix_params(c.n, rng);
      for (double r : c.radii)
        reps.push_back(make_report("lemma_b r=" + format_double(r) + " draw=" + std::to_string(t), lemma_b_ratio(ap, r),
                                   1.0, 5e-2));
    }
  } else if (c.command == "e9") {
    std::vector<SpectralParams> grid;
    if (c.s_given) {
      grid.push_back(p);
    } else {
      const int lo = c.n_given ? c.n : 1, hi = c.n_given ? c.n : 3;
      for (int n = lo; n <= hi; ++n)
        for (int nu = -3; nu <= 3; ++nu)
          for (cplx s : {cplx(n - 0.4, 0.0), cplx(n + 1.0, 0.0), cplx(n + 2.5, 0.0), cplx(n + 1.0, 1.0)})
            grid.push_back({n, nu, s});
    }
    for (const auto& q : grid) {
      auto rep = e9_identity_check(q, 1e-9);
      rep.name += " " + q.describe();
      reps.push_back(rep);
    }
  } else {
    throw UsageError("unknown command " + c.command);
  }
  write_csv_header(os, config_header(c));
  write_reports(os, reps);
  return all_pass(reps);
}

inline bool run_sweep(RunConfig& c, std::ostream& os) {
  const SpectralParams p = c.params();
  SweepResult s;
  if (c.command == "key-lemma") {
    with_defaults(c, {0.99, 0.999, 0.9999}, 0, 2);
    s = key_lemma_sweep(p, signatures_up_to(c.n, c.max_m), c.radii);
  } else if (c.command == "forelli-rudin") {
    with_defaults(c, {0.5, 0.9, 0.99}, 64, 0);
    s = forelli_rudin_growth(p, c.radii, c.grid);
  } else if (c.command == "sandwich") {
    with_defaults(c, sandwich_radii(), 0, 1);
    s = norm_sandwich(p, default_test_function(c.n, c.max_m), c.pexp, c.radii);
  } else if (c.command == "invert") {
    with_defaults(c, {0.9, 0.99, 0.999, 0.9999}, 0, 1);
    s = inversion_experiment(p, default_test_function(c.n, c.max_m), c.radii);
  } else {
    throw UsageError("unknown command " + c.command);
  }
  write_csv_header(os, config_header(c));
  write_sweep_rows(os, s);
  for (const auto& f : s.findings) std::cerr << s.name << ": " << f << "\n";
  return s.pass;
}

inline bool run_verify_all(RunConfig& c, std::ostream& os) {
  VerifyOptions opt;
  opt.max_n = c.extended ? 3 : 2;
  opt.seed = c.seed;
  write_csv_header(os, config_header(c));
  os << "criterion,title,pass,detail\n";
  bool ok = true;
  for (const auto& run : all_criteria()) {
    const CriterionOutcome o = run(opt);
    ok = ok && o.pass;
    os << o.id << "," << csv_field(o.title) << "," << (o.pass ? 1 : 0) << "," << csv_field(o.detail) << "\n";
    std::cerr << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << o.id << ": " << o.title << " -- " << o.detail
              << " (" << detail::sci(o.seconds) << " s)\n";
  }
  return ok;
}

}  // namespace detail

/// Executes a validated config. Returns the process exit code.
inline int run(RunConfig c, std::ostream& os) {
  static const std::vector<std::string> sweeps = {"key-lemma", "forelli-rudin", "sandwich", "invert"};
  try {
    bool ok = false;
    if (c.command == "verify-all")
      ok = detail::run_verify_all(c, os);
    else if (std::find(sweeps.begin(), sweeps.end(), c.command) != sweeps.end())
      ok = detail::run_sweep(c, os);
    else
      ok = detail::run_reports(c, os);
    os.flush();
    if (!ok) std::cerr << c.command << ": check failed\n";
    return static_cast<int>(ok ? ExitCode::pass : ExitCode::fail);
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::numerical);
  }
}

/// Full entry point: parse, open the output, run.
inline int main_entry(int argc, const char* const* argv) {
  RunConfig c;
  try {
    c = parse_args(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::usage);
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::numerical);
  }
  if (c.out.empty()) return run(c, std::cout);
  std::ofstream file(c.out, std::ios::binary);
  if (!file) {
    std::cerr << "usage error: cannot open --out " << c.out << "\n";
    return static_cast<int>(ExitCode::usage);
  }
  return run(c, file);
}

}  // namespace matball
