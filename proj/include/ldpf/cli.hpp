// Copyright 2026 The ldpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The `ldpf` command line: privatize, fisher, simulate, tune, verify.
// Kept in a header so tests can drive run() in-process.

#ifndef LDPF_CLI_HPP_
#define LDPF_CLI_HPP_

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldpf/errors.hpp"
#include "ldpf/estimate.hpp"
#include "ldpf/fisher.hpp"
#include "ldpf/mechanism.hpp"
#include "ldpf/models.hpp"
#include "ldpf/verify.hpp"

namespace ldpf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// 17 significant digits: enough for every double to re-parse exactly.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One real per line. Blank lines are skipped; anything else that does not
// parse as a finite decimal is an error naming the line.
inline std::vector<double> read_reals(std::istream& in, const std::string& source) {
  std::vector<double> out;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const std::size_t last = line.find_last_not_of(" \t");
    const std::string token = line.substr(first, last - first + 1);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v)) {
      throw DomainError(source + ":" + std::to_string(number) + ": cannot parse '" + token +
                        "' as a finite real");
    }
    out.push_back(v);
  }
  return out;
}

struct Scenario {
  std::string model = "gaussian";
  double theta0 = 0.0;
  std::string nu = "gaussian";
  double nu_location = 0.0;
  double nu_scale = 1.0;
  double split = 0.0;
  std::string mechanism = "asymmetric-staircase";
  std::vector<double> alphas = {4.0};
  std::vector<double> cs = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::size_t n = 1000;
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out = "-";
  std::string in;
  bool scan = false;
  double tune_tol = 1e-4;
  double normalizer_bias = 0.0;
  double rel_tol = 1e-9;
};

inline std::shared_ptr<const ParametricModel> make_model(const Scenario& sc) {
  if (sc.model == "gaussian") return std::make_shared<GaussianLocation>(sc.theta0);
  if (sc.model == "logistic") return std::make_shared<LogisticLocation>(sc.theta0);
  throw ConfigError("unknown model '" + sc.model + "'");
}

inline bool uses_c(const Scenario& sc) {
  return sc.mechanism == "asymmetric-staircase" || sc.mechanism == "binomial-approx";
}

inline Channel make_channel(const Scenario& sc, double alpha, double c) {
  if (sc.mechanism == "asymmetric-staircase") {
    BaseMeasure nu = sc.nu == "cauchy" ? BaseMeasure::cauchy(sc.nu_location, sc.nu_scale)
                                       : BaseMeasure::gaussian(sc.nu_location, sc.nu_scale);
    return Channel::asymmetric_staircase(alpha, BoundaryFamily::full_line(nu, c));
  }
  if (sc.mechanism == "binomial-approx") {
    return Channel::binomial_approx(alpha,
                                    BoundaryFamily::folded_normal_pair(c, sc.split, sc.nu_scale));
  }
  if (sc.mechanism == "two-point-sign") return Channel::two_point_sign(alpha, sc.split);
  if (sc.mechanism == "identity") return Channel::identity();
  throw ConfigError("unknown mechanism '" + sc.mechanism + "'");
}

// Writes to the named file, or to `fallback` for "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline int cmd_privatize(const Scenario& sc, std::ostream& out) {
  if (sc.in.empty()) throw ConfigError("privatize: --in is required");
  std::ifstream in(sc.in, std::ios::binary);
  if (!in) throw ConfigError("privatize: cannot open input file '" + sc.in + "'");
  const std::vector<double> xs = read_reals(in, sc.in);
  if (sc.alphas.size() != 1 || (uses_c(sc) && sc.cs.size() != 1)) {
    throw ConfigError("privatize: give exactly one --alpha and one --c");
  }
  const Channel ch = make_channel(sc, sc.alphas.front(), uses_c(sc) ? sc.cs.front() : 0.0);
  const Dataset z = privatize(ch, xs, sc.seed);
  Output sink(sc.out, out);
  for (double v : z.values) sink.get() << format_real(v) << '\n';
  return kExitOk;
}

inline int cmd_fisher(const Scenario& sc, std::ostream& out, std::ostream& err) {
  const auto model = make_model(sc);
  QuadratureSpec quad;
  quad.rel_tol = sc.rel_tol;
  const std::vector<double> cs = uses_c(sc) ? sc.cs : std::vector<double>{std::nan("")};
  Output sink(sc.out, out);
  sink.get() << "alpha,c,fisher,theo_std,sym_term,mass_term,asym_term,sym_part,asym_part,status\n";
  int code = kExitOk;
  for (double alpha : sc.alphas) {
    for (double c : cs) {
      const Channel ch = make_channel(sc, alpha, c);
      std::ostringstream row;
      row << format_real(alpha) << ',' << format_real(c) << ',';
      try {
        const FisherReport rep = channel_fisher(*model, sc.theta0, ch, quad);
        row << format_real(rep.total) << ','
            << format_real(theoretical_std(static_cast<double>(sc.n), rep.total)) << ','
            << format_real(rep.sym_term) << ',' << format_real(rep.mass_term) << ','
            << format_real(rep.asym_term) << ',' << format_real(rep.sym_part) << ','
            << format_real(rep.asym_part) << ",ok";
      } catch (const Error& e) {
        if (e.category() == Error::Category::kConfiguration) throw;
        row << "nan,nan,nan,nan,nan,nan,nan,failed";
        err << "fisher: alpha=" << format_real(alpha) << " c=" << format_real(c) << ": " << e.what()
            << '\n';
        code = kExitNumerical;
      }
      sink.get() << row.str() << '\n';
    }
  }
  return code;
}

inline int cmd_simulate(const Scenario& sc, std::ostream& out, std::ostream& err) {
  MonteCarloScenario mc;
  mc.model = make_model(sc);
  const Scenario copy = sc;
  mc.channel = [copy](double alpha, double c) { return make_channel(copy, alpha, c); };
  mc.alphas = sc.alphas;
  mc.cs = uses_c(sc) ? sc.cs : std::vector<double>{std::nan("")};
  mc.n = sc.n;
  mc.trials = sc.trials;
  mc.seed = sc.seed;
  mc.threads = sc.threads;
  mc.scan = sc.scan;
  mc.quadrature.rel_tol = sc.rel_tol;
  const std::vector<MonteCarloRow> rows = monte_carlo(mc);
  Output sink(sc.out, out);
  sink.get() << "alpha,c,bias,std,theo_std,trials,n,failed_trials,boundary_trials"
             << (sc.scan ? ",multimodal_trials" : "") << ",status\n";
  int code = kExitOk;
  for (const MonteCarloRow& r : rows) {
    sink.get() << format_real(r.alpha) << ',' << format_real(r.c) << ',' << format_real(r.bias)
               << ',' << format_real(r.std) << ',' << format_real(r.theo_std) << ',' << r.trials
               << ',' << r.n << ',' << r.failed_trials << ',' << r.boundary_trials;
    if (sc.scan) sink.get() << ',' << r.multimodal_trials;
    sink.get() << ',' << (r.failed ? "failed" : "ok") << '\n';
    if (r.failed) {
      err << "simulate: alpha=" << format_real(r.alpha) << " c=" << format_real(r.c) << ": "
          << r.failed_trials << " of " << sc.trials << " trials failed; first error: " << r.error
          << '\n';
      code = kExitNumerical;
    }
  }
  return code;
}

// Golden-section search for the c maximizing the channel's Fisher information.
inline int cmd_tune(const Scenario& sc, std::ostream& out) {
  if (!uses_c(sc)) throw ConfigError("tune: mechanism '" + sc.mechanism + "' has no c");
  const auto model = make_model(sc);
  QuadratureSpec quad;
  quad.rel_tol = sc.rel_tol;
  const bool staircase = sc.mechanism == "asymmetric-staircase";
  MLEConfig search;
  search.lo = 1e-4;
  search.hi = staircase ? 0.5 : 1.0 - 1e-4;
  search.tol = sc.tune_tol;
  search.polish = false;
  Output sink(sc.out, out);
  sink.get() << "alpha,c,fisher,theo_std\n";
  for (double alpha : sc.alphas) {
    auto fisher_at = [&](double c) {
      return channel_fisher(*model, sc.theta0, make_channel(sc, alpha, c), quad).total;
    };
    MLEResult best = golden_section_maximize(fisher_at, search);
    // The admissible end is closed; compare against it explicitly.
    const double at_end = fisher_at(search.hi);
    if (at_end >= best.log_likelihood) {
      best.theta_hat = search.hi;
      best.log_likelihood = at_end;
    }
    sink.get() << format_real(alpha) << ',' << format_real(best.theta_hat) << ','
               << format_real(best.log_likelihood) << ','
               << format_real(theoretical_std(static_cast<double>(sc.n), best.log_likelihood))
               << '\n';
  }
  return kExitOk;
}

inline int cmd_verify(const Scenario& sc, std::ostream& out) {
  VerifyOptions opt;
  opt.normalizer_bias = sc.normalizer_bias;
  bool all = true;
  for (const CheckResult& r : run_verify_suite(opt)) {
    if (r.informational) {
      out << "INFO  " << r.name << ": " << r.detail << '\n';
      continue;
    }
    out << (r.ok ? "PASS  " : "FAIL  ") << r.name;
    if (!r.ok || !r.detail.empty()) out << ": " << r.detail;
    out << '\n';
    all = all && r.ok;
  }
  out << (all ? "verify: all checks passed\n" : "verify: some checks FAILED\n");
  return all ? kExitOk : kExitNumerical;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fisher-information-optimal staircase mechanisms under local differential privacy"};
  app.name("ldpf");
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Scenario sc;
  app.add_option("--model", sc.model, "Parametric model")
      ->check(CLI::IsMember({"gaussian", "logistic"}))
      ->capture_default_str();
  app.add_option("--theta0", sc.theta0, "True parameter")->capture_default_str();
  app.add_option("--nu", sc.nu, "Base measure of the staircase")
      ->check(CLI::IsMember({"gaussian", "cauchy"}))
      ->capture_default_str();
  app.add_option("--nu-location", sc.nu_location)->capture_default_str();
  app.add_option("--nu-scale", sc.nu_scale)->capture_default_str();
  app.add_option("--split", sc.split, "Sign split for half-line mechanisms")->capture_default_str();
  app.add_option("--mechanism", sc.mechanism)
      ->check(
          CLI::IsMember({"asymmetric-staircase", "binomial-approx", "two-point-sign", "identity"}))
      ->capture_default_str();
  app.add_option("--alpha", sc.alphas, "Privacy budgets, comma separated")->delimiter(',');
  app.add_option("--c", sc.cs, "Interval masses, comma separated")->delimiter(',');
  app.add_option("--n", sc.n, "Sample size per trial")->capture_default_str();
  app.add_option("--trials", sc.trials, "Monte Carlo trials per grid point")->capture_default_str();
  app.add_option("--seed", sc.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", sc.threads, "Worker threads (0: all cores)")->envname("LDPF_THREADS");
  app.add_option("--out", sc.out, "Output file, '-' for stdout")->capture_default_str();
  app.add_option("--in", sc.in, "Input file, one real per line");
  app.add_option("--rel-tol", sc.rel_tol, "Quadrature relative tolerance")->capture_default_str();
  app.add_flag("--scan", sc.scan, "Count likelihood local maxima on a 512-point grid");
  app.add_option("--tol", sc.tune_tol, "Resolution of the c search in tune")->capture_default_str();
  app.add_option("--perturb-normalizer", sc.normalizer_bias)->group("");

  CLI::App* privatize_cmd = app.add_subcommand("privatize", "Privatize a file of reals");
  CLI::App* fisher_cmd = app.add_subcommand("fisher", "Fisher information table (CSV)");
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo MLE sweep (CSV)");
  CLI::App* tune_cmd = app.add_subcommand("tune", "Best c for each alpha (CSV)");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the property suites");
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ldpf: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (sc.alphas.empty() || sc.cs.empty()) throw ConfigError("alpha and c grids must be nonempty");
    if (privatize_cmd->parsed()) return cmd_privatize(sc, out);
    if (fisher_cmd->parsed()) return cmd_fisher(sc, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(sc, out, err);
    if (tune_cmd->parsed()) return cmd_tune(sc, out);
    if (verify_cmd->parsed()) return cmd_verify(sc, out);
  } catch (const Error& e) {
    err << "ldpf: " << e.what() << '\n';
    return e.exit_code();
  }
  return kExitConfig;
}

}  // namespace ldpf::cli

#endif  // LDPF_CLI_HPP_
