#include "pbcli/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "CLI11.hpp"
#include "pbcli/param_io.hpp"
#include "pbcli/report.hpp"
#include "pbcli/sweep.hpp"
#include "pbratio/pbratio.hpp"

namespace pbcli {
namespace {

struct ParamSource {
  std::string list;
  std::string file;

  std::vector<double> load() const {
    if (!list.empty() && !file.empty()) throw UsageError("give either -p or -f, not both");
    if (!file.empty()) return read_param_file(file);
    if (list.empty()) throw UsageError("parameters required: -p <comma-list> or -f <file>");
    return parse_param_list(list);
  }
  std::string label() const { return file.empty() ? "list" : file; }
};

std::vector<std::size_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const auto v = std::stoull(text);
      return {v, v};
    }
    return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--n expects <min>:<max>, got '" + text + "'");
  }
}

int report_command(const ParamSource& src, bool json, bool with_pmf, double tol,
                   std::ostream& out) {
  if (!(tol >= 0.0)) throw UsageError("--tol must be non-negative");
  const ReportDocument doc = build_report(src.label(), src.load(), tol);
  if (json) {
    out << report_json(doc, with_pmf) << "\n";
  } else {
    print_report(out, doc, with_pmf);
  }
  return doc.verdict_pass() ? kExitPass : kExitVerdictFailure;
}

int certify_command(SweepConfig config, const std::string& n_range, const std::string& checks,
                    bool json, std::ostream& out) {
  const auto range = parse_range(n_range);
  config.n_min = range[0];
  config.n_max = range[1];
  config.checks = parse_checks(checks);
  const SweepSummary summary = run_sweep(config);
  if (json) {
    out << summary_json(summary) << "\n";
  } else {
    print_summary(out, summary);
  }
  return summary.passed() ? kExitPass : kExitVerdictFailure;
}

int ray_command(const ParamSource& src, const std::string& grid_text, bool csv,
                std::ostream& out) {
  const auto pv = pbratio::ParameterVector::make(src.load());
  const GridSpec spec = parse_grid(grid_text);
  const auto grid = pbratio::uniform_grid(spec.lo, spec.hi, spec.count);
  const auto profile = pbratio::envelope(pv, grid);

  const char* sep = csv ? "," : "  ";
  auto cell = [&](double v) {
    if (csv) return format_double(v);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%14.8g", v);
    return std::string(buf);
  };

  out << "t" << sep << "f" << sep << "argmax_x";
  for (std::size_t x = 1; x <= profile.x_max; ++x) out << sep << "L_" << x << sep << "dL_" << x;
  out << "\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::string argmax;
    for (const std::size_t x : profile.envelope_argmax[k]) {
      if (!argmax.empty()) argmax += ';';
      argmax += std::to_string(x);
    }
    out << cell(grid[k]) << sep << cell(profile.f[k]) << sep << argmax;
    for (std::size_t row = 0; row < profile.x_max; ++row) {
      out << sep << cell(profile.L[row][k]) << sep << cell(profile.L_prime[row][k]);
    }
    out << "\n";
  }
  return kExitPass;
}

int oracle_command(const ParamSource& src, std::ostream& out) {
  const auto pv = pbratio::ParameterVector::make(src.load());
  if (pv.size() > pbratio::oracle::kMaxBruteN) {
    throw UsageError("oracle-check needs n <= 20");
  }
  const auto b = pbratio::pmf(pv);
  const auto brute = pbratio::oracle::brute_pmf_both(pv);
  double worst = 0.0;
  for (std::size_t x = 0; x < b.size(); ++x) {
    worst = std::max(worst, std::abs(b.masses[x] - brute.by_outcomes.masses[x]));
  }
  bool ok = worst <= 1e-12;
  out << "dp pmf vs enumeration   max abs diff " << format_double(worst)
      << (ok ? "  ok" : "  FAIL") << "\n\n";
  out << "  x  (x+1)b(x+1)/b(x)      subset form           rel err    2a rel err  2b rel err  "
         "status\n";
  for (std::size_t x = 0; x < b.size() && b.masses[x] > 0.0; ++x) {
    const auto rep = pbratio::oracle::verify_ratio_representations(pv, x);
    char line[256];
    std::snprintf(line, sizeof line, "%3zu  %-20.14g  %-20.14g  %-9.3g  ", x, rep.forward.from_pmf,
                  rep.forward.from_subsets, rep.forward.relative_error);
    out << line;
    if (rep.inverse_odds) {
      std::snprintf(line, sizeof line, "%-10.3g  %-10.3g  ", rep.inverse_odds->relative_error,
                    rep.inverse_probabilities->relative_error);
    } else {
      std::snprintf(line, sizeof line, "%-10s  %-10s  ", "n/a", "n/a");
    }
    out << line << (rep.pass ? "ok" : "FAIL") << "\n";
    ok = ok && rep.pass;
  }
  out << "\nresult: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitPass : kExitVerdictFailure;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  GridSpec spec;
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw UsageError("--grid expects <min>:<max>:<count>");
  try {
    std::size_t used = 0;
    spec.lo = std::stod(text.substr(0, a), &used);
    spec.hi = std::stod(text.substr(a + 1, b - a - 1));
    const long long count = std::stoll(text.substr(b + 1));
    if (count < 1) throw UsageError("--grid count must be positive");
    spec.count = static_cast<std::size_t>(count);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--grid expects <min>:<max>:<count>, got '" + text + "'");
  }
  if (!(spec.lo > 0.0 && spec.hi <= 1.0 && spec.lo <= spec.hi) ||
      (spec.count > 1 && !(spec.lo < spec.hi))) {
    throw UsageError("--grid needs 0 < min < max <= 1");
  }
  return spec;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poisson binomial versus Poisson: exact density ratios and bound certification",
               "pb"};
  app.require_subcommand(1);

  ParamSource src;
  bool json = false;
  bool with_pmf = false;
  bool csv = false;
  double tol = pbratio::kDefaultTol;
  std::string grid = "1e-4:1:101";

  auto* report = app.add_subcommand("report", "bounds and verdicts for one parameter vector");
  report->add_option("-p,--params", src.list, "comma-separated probabilities");
  report->add_option("-f,--file", src.file, "file with one probability per line");
  report->add_flag("--json", json, "schema-versioned JSON document");
  report->add_flag("--pmf", with_pmf, "include the probability masses");
  report->add_option("--tol", tol, "verdict tolerance (default 1e-12)");

  SweepConfig config;
  std::string n_range;
  std::string checks = "all";
  double lambda_cap = 0.0;
  auto* certify = app.add_subcommand("certify", "randomised certification sweep");
  certify->add_option("--seed", config.seed, "64-bit seed")->required();
  certify->add_option("--trials", config.trials, "number of random vectors")->required();
  certify->add_option("--n", n_range, "<min>:<max> vector length")->required();
  certify->add_option("--pmax", config.p_max, "p_i ~ U[0, pmax]")->required();
  auto* cap_opt = certify->add_option("--lambda-cap", lambda_cap, "reject draws with lambda > cap");
  certify->add_option("--checks", checks, "all, or comma list of check names");
  certify->add_option("--workers", config.workers, "worker threads (0: all cores)");
  certify->add_option("--tol", config.tol, "verdict tolerance (default 1e-12)");
  certify->add_flag("--json", json, "JSON summary");

  auto* ray = app.add_subcommand("ray", "L_x(t) and the envelope f(t) along t*p");
  ray->add_option("-p,--params", src.list, "comma-separated probabilities");
  ray->add_option("-f,--file", src.file, "file with one probability per line");
  ray->add_option("--grid", grid, "<min>:<max>:<count> in (0,1] (default 1e-4:1:101)");
  ray->add_flag("--csv", csv, "comma-separated output");

  auto* oracle = app.add_subcommand("oracle-check", "brute-force cross-checks (n <= 20)");
  oracle->add_option("-p,--params", src.list, "comma-separated probabilities");
  oracle->add_option("-f,--file", src.file, "file with one probability per line");

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'pb --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (*report) return report_command(src, json, with_pmf, tol, out);
    if (*certify) {
      if (cap_opt->count() > 0) config.lambda_cap = lambda_cap;
      return certify_command(config, n_range, checks, json, out);
    }
    if (*ray) return ray_command(src, grid, csv, out);
    if (*oracle) return oracle_command(src, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pbratio::Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == pbratio::ErrorCode::OracleInconsistency ? kExitVerdictFailure : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pbcli
