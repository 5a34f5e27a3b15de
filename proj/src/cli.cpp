#include "rabi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rabi/csv.hpp"
#include "rabi/eigensolve.hpp"
#include "rabi/params.hpp"
#include "rabi/perturb.hpp"
#include "rabi/polys.hpp"
#include "rabi/squeeze.hpp"

namespace rabi::cli {

namespace {

// Writes to --out when given, otherwise to the supplied stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

Check below(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, value < threshold};
}

Check exact_zero(std::string name, double value) { return {std::move(name), value, 0.0, value == 0.0}; }

std::vector<Check> squeeze_suite(const ModelParams& p, std::size_t dim) {
  std::vector<Check> checks;
  const std::size_t block = certified_block(dim);
  checks.push_back(below("factorization_residual", factorization_residual(dim, p.lambda), 1e-7));
  checks.push_back(below("h0_transform_residual", h0_transform_residual(dim, p.g), 1e-6));
  checks.push_back(below("uvu_residual", uvu_residual(dim, p.lambda, p.delta), 1e-8));

  const DenseMatrix oracle = u_matrix_oracle(dim, p.lambda);
  double element_gap = 0.0;
  for (std::size_t m = 0; m < block; ++m)
    for (std::size_t n = 0; n < block; ++n)
      element_gap = std::max(element_gap, std::fabs(u_element(static_cast<long>(m), static_cast<long>(n), p.lambda) -
                                                    oracle(m, n)));
  checks.push_back(below("u_element_vs_exponential", element_gap, 1e-9));

  const DenseMatrix gram = oracle.transposed() * oracle;
  checks.push_back(below("oracle_orthogonality", max_abs_diff(gram, DenseMatrix::identity(dim), block), 1e-9));

  // lambda = 0: every construction collapses to the identity.
  checks.push_back(exact_zero("factorization_residual(lambda=0)", factorization_residual(dim, 0.0)));
  checks.push_back(exact_zero("uvu_residual(lambda=0)", uvu_residual(dim, 0.0, p.delta)));
  double identity_gap = 0.0;
  for (long m = 0; m < static_cast<long>(block); ++m)
    for (long n = 0; n < static_cast<long>(block); ++n)
      identity_gap = std::max(identity_gap, std::fabs(u_element(m, n, 0.0) - (m == n ? 1.0 : 0.0)));
  checks.push_back(exact_zero("u_element(lambda=0)_identity", identity_gap));
  return checks;
}

std::vector<Check> polys_suite(const ModelParams& p) {
  std::vector<Check> checks;
  const double x = p.omega / (2.0 * p.g);
  const mpq_class xq(x);

  long failures = 0;
  for (long n = 0; n <= 40; ++n)
    for (long m = n; m <= 40; ++m)
      for (bool odd : {false, true})
        if (!hypergeometric_identity_holds(n, m, odd, xq)) ++failures;
  checks.push_back(exact_zero("hypergeometric_identity_failures", static_cast<double>(failures)));

  double worst = 0.0;
  for (long n : {0L, 1L, 7L, 40L, 101L, 200L}) {
    for (long s : {0L, 5L, 30L}) {
      const PolyValue fast = p_fast(n, s, x);
      const SignLog exact = sign_log(p_exact(n, s, xq));
      worst = std::max(worst, relative_difference(fast.sign, fast.log_abs, exact.sign, exact.log_abs));
    }
  }
  checks.push_back(below("p_fast_vs_p_exact_relative", worst, 1e-9));

  const PhaseSpec spec{0, 10.0, 1.0};
  checks.push_back(
      below("phase_integral_s0_closed_form", std::fabs(phase_integral(spec) - 10.0 * std::atan(std::sinh(1.0))), 1e-12));

  // Envelope-normalized remainder, worst case over x in [0.5, 3], must shrink with the index size.
  double worst_ratio = INFINITY;
  for (long parity : {0L, 1L}) {
    auto sup = [&](long n_full) {
      double r = 0.0;
      for (int i = 0; i <= 60; ++i) r = std::max(r, asym_normalized_residual(n_full, n_full, 0.5 + 2.5 * i / 60.0));
      return r;
    };
    worst_ratio = std::min(worst_ratio, sup(100 + parity) / sup(200 + parity));
  }
  checks.push_back({"asymptotic_remainder_decay_ratio", worst_ratio, 1.5, worst_ratio >= 1.5});
  return checks;
}

std::vector<Check> perturb_suite(const ModelParams& p) {
  std::vector<Check> checks;
  double row_gap = 0.0;
  for (long n = 0; n <= 40; ++n) {
    double mass = 0.0;
    for (long k = n % 2; k <= 4000; k += 2) {
      const double v = v_tilde(k, n, p);
      mass += v * v;
    }
    row_gap = std::max(row_gap, std::fabs(mass - 0.25 * p.delta * p.delta));
  }
  checks.push_back(below("v_tilde_row_norm_identity", row_gap, 1e-8));

  double asym = 0.0;
  for (long m = 0; m <= 40; ++m)
    for (long n = 0; n <= 40; ++n) asym = std::max(asym, std::fabs(v_tilde(m, n, p) - v_tilde(n, m, p)));
  checks.push_back(exact_zero("v_tilde_symmetry", asym));

  double route_gap = 0.0;
  for (long m = 0; m <= 64; ++m)
    for (long n = 0; n <= 64; ++n)
      route_gap = std::max(route_gap, std::fabs(v_tilde(m, n, p) - v_tilde_from_squeeze(m, n, p)));
  checks.push_back(below("v_tilde_polynomial_vs_squeeze_route", route_gap, 1e-10));

  double branch_gap = 0.0;
  for (long n = 1; n <= 200; ++n)
    branch_gap = std::max(branch_gap, std::fabs(three_term(n, p, Branch::Plus).oscillatory +
                                                three_term(n, p, Branch::Minus).oscillatory));
  checks.push_back(exact_zero("three_term_branch_antisymmetry", branch_gap));
  return checks;
}

void print_checks(const std::vector<Check>& checks, std::ostream& out) {
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(40) << c.name << " value=" << csv::format_real(c.value)
        << " threshold=" << csv::format_real(c.threshold) << '\n';
  }
}

void write_spectrum(const Spectrum& spectrum, Parity parity, std::ostream& out) {
  out << "n,fock_index,energy,trusted\n";
  for (std::size_t k = 0; k < spectrum.values.size(); ++k) {
    out << k << ',' << 2 * static_cast<long>(k) + parity_offset(parity) << ',' << csv::format_real(spectrum.values[k])
        << ',' << (k < spectrum.trusted_count ? 1 : 0) << '\n';
  }
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace

int cmd_spectrum(const SpectrumOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.levels < 1) throw std::invalid_argument("--levels must be at least 1");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (opts.max_dim < 2) throw std::invalid_argument("--max-dim must be at least 2");
    const ModelParams params = derive_params(opts.g, opts.delta);
    ConvergenceOptions limits;
    limits.max_dim = static_cast<std::size_t>(opts.max_dim);
    const Spectrum spectrum =
        converged_levels(params, {opts.branch, opts.parity}, static_cast<std::size_t>(opts.levels), opts.tol, limits);
    Sink sink(opts.out, out);
    write_spectrum(spectrum, opts.parity, sink.get());
    return static_cast<int>(kOk);
  });
}

int cmd_residuals(const ResidualOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (opts.n_min < 10) throw std::invalid_argument("--n-min must be at least 10");
    if (opts.n_max < opts.n_min) throw std::invalid_argument("--n-max must not be below --n-min");
    const ModelParams params = derive_params(opts.g, opts.delta);
    const ResidualStudy study = residual_study(params, opts.branch, opts.n_min, opts.n_max, opts.tol);
    Sink sink(opts.out, out);
    std::ostream& os = sink.get();
    os << "n,numeric,linear,shift,oscillatory,three_term,residual,res_n_over_logn,res_n\n";
    for (std::size_t i = 0; i < study.rows.size(); ++i) {
      const auto& r = study.rows[i];
      os << r.n << ',' << csv::format_real(r.numeric) << ',' << csv::format_real(r.linear) << ','
         << csv::format_real(r.shift) << ',' << csv::format_real(r.oscillatory) << ','
         << csv::format_real(r.three_term) << ',' << csv::format_real(r.residual) << ','
         << csv::format_real(study.res_n_over_logn[i]) << ',' << csv::format_real(study.res_n[i]) << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.dim < 16 || opts.dim > 512) throw std::invalid_argument("--dim must lie in [16, 512]");
    const std::string& suite = opts.suite;
    if (suite != "squeeze" && suite != "polys" && suite != "perturb" && suite != "all")
      throw std::invalid_argument("--suite must be one of squeeze, polys, perturb, all");
    const ModelParams params = derive_params(opts.g, opts.delta);
    std::vector<Check> checks;
    auto append = [&](std::vector<Check> more) { checks.insert(checks.end(), more.begin(), more.end()); };
    if (suite == "squeeze" || suite == "all") append(squeeze_suite(params, static_cast<std::size_t>(opts.dim)));
    if (suite == "polys" || suite == "all") append(polys_suite(params));
    if (suite == "perturb" || suite == "all") append(perturb_suite(params));
    print_checks(checks, out);
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
    if (failed > 0) {
      out << failed << " of " << checks.size() << " checks failed:";
      for (const auto& c : checks)
        if (!c.pass) out << ' ' << c.name;
      out << '\n';
      return static_cast<int>(kVerificationFailed);
    }
    out << "all " << checks.size() << " checks passed\n";
    return static_cast<int>(kOk);
  });
}

int cmd_poly(const PolyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.n < 0 || opts.m < 0) throw std::invalid_argument("--n and --m must be non-negative");
    if ((opts.m - opts.n) % 2 != 0) throw std::invalid_argument("--n and --m must share parity");
    if (opts.m < opts.n) throw std::invalid_argument("--m must not be below --n");
    if (opts.x_min > opts.x_max) throw std::invalid_argument("--x-min must not exceed --x-max");
    if (opts.points < 1 || (opts.points == 1 && opts.x_min != opts.x_max))
      throw std::invalid_argument("--points must be at least 2 for a non-degenerate range");
    const long s = (opts.m - opts.n) / 2;
    Sink sink(opts.out, out);
    std::ostream& os = sink.get();
    os << "x,p_exact,p_fast,p_asym,envelope\n";
    for (long i = 0; i < opts.points; ++i) {
      const double x = opts.points == 1 ? opts.x_min
                                        : opts.x_min + (opts.x_max - opts.x_min) * static_cast<double>(i) /
                                                           static_cast<double>(opts.points - 1);
      os << csv::format_real(x) << ',';
      if (opts.n <= kExactDegreeGuard) os << csv::format_rational(p_exact(opts.n, s, mpq_class(x)));
      const PolyValue fast = p_fast(opts.n, s, x);
      os << ',' << csv::format_log_value(fast.sign, fast.log_abs) << ',';
      try {
        const AsymValue asym = p_asym(opts.n, opts.m, x);
        const double log_value = asym.trig == 0.0 ? -INFINITY : asym.log_envelope + std::log(std::fabs(asym.trig));
        const int sign = asym.trig == 0.0 ? 0 : asym.envelope_sign * (asym.trig > 0.0 ? 1 : -1);
        os << csv::format_log_value(sign, log_value) << ',' << csv::format_log_value(asym.envelope_sign, asym.log_envelope);
      } catch (const std::domain_error&) {
        os << ',';  // outside the asymptotic validity domain
      }
      os << '\n';
    }
    return static_cast<int>(kOk);
  });
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-photon Rabi spectra: eigenvalues, asymptotics and verification"};
  app.require_subcommand(1);

  const std::map<std::string, Branch> branch_map{{"plus", Branch::Plus}, {"minus", Branch::Minus}};
  const std::map<std::string, Parity> parity_map{{"even", Parity::Even}, {"odd", Parity::Odd}};

  SpectrumOptions spec_opts;
  auto* spectrum = app.add_subcommand("spectrum", "certified lowest levels of one parity chain as CSV");
  spectrum->add_option("--g", spec_opts.g, "two-photon coupling in (0, 1/2)");
  spectrum->add_option("--delta", spec_opts.delta, "transition frequency");
  std::string spec_branch = "plus", spec_parity = "even";
  spectrum->add_option("--branch", spec_branch, "plus or minus")->check(CLI::IsMember(branch_map));
  spectrum->add_option("--parity", spec_parity, "even or odd")->check(CLI::IsMember(parity_map));
  spectrum->add_option("--levels", spec_opts.levels, "number of certified levels");
  spectrum->add_option("--tol", spec_opts.tol, "truncation-convergence tolerance");
  spectrum->add_option("--max-dim", spec_opts.max_dim, "largest chain truncation tried");
  spectrum->add_option("--out", spec_opts.out, "output file (stdout when omitted)");

  ResidualOptions res_opts;
  auto* residuals = app.add_subcommand("residuals", "three-term formula residuals as CSV");
  residuals->add_option("--g", res_opts.g, "two-photon coupling in (0, 1/2)");
  residuals->add_option("--delta", res_opts.delta, "transition frequency");
  std::string res_branch = "plus";
  residuals->add_option("--branch", res_branch, "plus or minus")->check(CLI::IsMember(branch_map));
  residuals->add_option("--n-min", res_opts.n_min, "first Fock level (>= 10)");
  residuals->add_option("--n-max", res_opts.n_max, "last Fock level");
  residuals->add_option("--tol", res_opts.tol, "truncation-convergence tolerance");
  residuals->add_option("--out", res_opts.out, "output file (stdout when omitted)");

  VerifyOptions ver_opts;
  auto* verify = app.add_subcommand("verify", "run the identity and residual checks");
  verify->add_option("--g", ver_opts.g, "two-photon coupling in (0, 1/2)");
  verify->add_option("--delta", ver_opts.delta, "transition frequency");
  verify->add_option("--dim", ver_opts.dim, "oracle truncation dimension (<= 512)");
  verify->add_option("--suite", ver_opts.suite, "squeeze, polys, perturb or all");

  PolyOptions poly_opts;
  auto* poly = app.add_subcommand("poly", "P_n^{(s)} exact, fast and asymptotic values on an x grid");
  poly->add_option("--n", poly_opts.n, "polynomial degree (Fock index n)");
  poly->add_option("--m", poly_opts.m, "second Fock index, s = (m - n)/2");
  poly->add_option("--x-min", poly_opts.x_min, "grid start");
  poly->add_option("--x-max", poly_opts.x_max, "grid end");
  poly->add_option("--points", poly_opts.points, "grid size");
  poly->add_option("--out", poly_opts.out, "output file (stdout when omitted)");

  try {
    if (const char* path = std::getenv(kConfigEnv); path != nullptr && *path != '\0') {
      const auto config = read_config(path);
      for (auto* sub : {spectrum, residuals, verify, poly}) {
        for (auto* opt : sub->get_options()) {
          for (const auto& name : opt->get_lnames()) {
            if (auto it = config.find(name); it != config.end()) opt->default_val(it->second);
          }
        }
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  if (spectrum->parsed()) {
    spec_opts.branch = branch_map.at(spec_branch);
    spec_opts.parity = parity_map.at(spec_parity);
    return cmd_spectrum(spec_opts, out, err);
  }
  if (residuals->parsed()) {
    res_opts.branch = branch_map.at(res_branch);
    return cmd_residuals(res_opts, out, err);
  }
  if (verify->parsed()) return cmd_verify(ver_opts, out, err);
  return cmd_poly(poly_opts, out, err);
}

}  // namespace rabi::cli
