#include "pbcli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <cstdio>
#include <ostream>
#include <random>
#include <thread>

#include "json.hpp"

#include "pbcli/param_io.hpp"
#include "pbratio/pbratio.hpp"

namespace pbcli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kOracleMaxN = 12;
constexpr std::size_t kRepresentationMaxN = 10;
constexpr std::size_t kMaxRejections = 1'000'000;

struct CheckEntry {
  Check check;
  std::string_view name;
};

constexpr CheckEntry kChecks[] = {
    {Check::Moments, "moments"},
    {Check::Normalization, "normalization"},
    {Check::Oracle, "oracle"},
    {Check::Theorem1, "theorem1"},
    {Check::Theorem2, "theorem2"},
    {Check::Prop1, "prop1"},
    {Check::Prop2, "prop2"},
    {Check::ArgmaxBracket, "argmax_bracket"},
    {Check::Fancy, "fancy"},
    {Check::TailRatio, "tail_ratio"},
    {Check::TvChain, "tv_chain"},
    {Check::Representations, "representations"},
    {Check::Ray, "ray"},
    {Check::Conjecture, "conjecture"},
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Fixed, platform-independent transforms of the raw engine output, so that a
// seed reproduces the same vectors on any standard library.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::size_t>(rng() % span);
}

// Worst margin over several inequalities, remembering the first failure.
class Accumulator {
 public:
  void add(std::string_view item, double margin, bool pass) {
    result_.status = result_.status == Status::Fail ? Status::Fail
                                                    : (pass ? Status::Pass : Status::Fail);
    if (!seen_ || margin < result_.margin) result_.margin = margin;
    seen_ = true;
    if (!pass && result_.failed_item.empty()) result_.failed_item = std::string(item);
  }
  void add(const pbratio::Verdict& v) { add(v.name, v.margin, v.pass); }

  CheckResult finish() const { return result_; }

 private:
  CheckResult result_;
  bool seen_ = false;
};

const pbratio::Verdict* find(const std::vector<pbratio::Verdict>& vs, std::string_view name) {
  for (const auto& v : vs) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

void add_named(Accumulator& acc, const std::vector<pbratio::Verdict>& vs,
               std::initializer_list<std::string_view> names) {
  for (const auto name : names) {
    if (const auto* v = find(vs, name)) acc.add(*v);
  }
}

// Bounded-tolerance checks: margin = allowed - observed.
void add_within(Accumulator& acc, std::string_view item, double observed, double allowed,
                double tol) {
  const double margin = allowed - observed;
  acc.add(item, margin, margin >= -tol);
}

void check_ray(Accumulator& acc, const pbratio::ParameterVector& pv, double tol) {
  const auto grid = pbratio::uniform_grid(0.05, 1.0, 20);
  const auto profile = pbratio::envelope(pv, grid);
  const double lambda = pv.lambda();

  for (std::size_t k = 0; k < grid.size(); ++k) {
    add_within(acc, "ray_window", std::abs(profile.f[k] - profile.full_scan_f[k]), 0.0, 0.0);
  }
  for (std::size_t row = 0; row < profile.x_max; ++row) {
    const auto& L = profile.L[row];
    for (std::size_t k = 1; k + 1 < L.size(); ++k) {
      add_within(acc, "ray_concavity", L[k - 1] - 2.0 * L[k] + L[k + 1], 1e-10, tol);
    }
    const std::size_t x = row + 1;
    for (const double t : {grid.front(), grid[grid.size() / 2], grid.back()}) {
      const auto forms = pbratio::eval_L_prime_forms(pv, x, t);
      const double scale =
          std::max({lambda, std::abs(forms.via_ratio), std::abs(forms.via_logs)});
      add_within(acc, "ray_derivative_forms", std::abs(forms.via_ratio - forms.via_logs),
                 pbratio::kLPrimeFormTol * scale, tol);
    }
    if (row + 1 < profile.x_max) {
      const auto& next = profile.L[row + 1];
      for (std::size_t k = 0; k < L.size(); ++k) {
        const double slope = profile.L_prime[row][k];
        const double diff = L[k] - next[k];
        // Both quantities are computed; tiny values are sign-ambiguous.
        const bool ambiguous = std::abs(slope) <= 1e-10 * lambda || std::abs(diff) <= 1e-12;
        const bool consistent = ambiguous || ((slope > 0) == (diff > 0));
        acc.add("ray_sign", consistent ? 0.0 : -std::abs(slope), consistent);
      }
    }
  }
}

void check_representations(Accumulator& acc, const pbratio::ParameterVector& pv,
                           const pbratio::PmfVector& b) {
  for (std::size_t x = 0; x < b.size() && b.masses[x] > 0.0; ++x) {
    const auto rep = pbratio::oracle::verify_ratio_representations(pv, x);
    acc.add("b_ratio_1", pbratio::oracle::kRepresentationTol - rep.forward.relative_error,
            rep.forward.pass);
    if (rep.inverse_odds) {
      acc.add("b_ratio_2a", pbratio::oracle::kRepresentationTol - rep.inverse_odds->relative_error,
              rep.inverse_odds->pass);
      acc.add("b_ratio_2b",
              pbratio::oracle::kRepresentationTol - rep.inverse_probabilities->relative_error,
              rep.inverse_probabilities->pass);
    }
  }
}

}  // namespace

std::string_view check_name(Check c) {
  for (const auto& e : kChecks) {
    if (e.check == c) return e.name;
  }
  return "unknown";
}

const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks = [] {
    std::vector<Check> out;
    for (const auto& e : kChecks) out.push_back(e.check);
    return out;
  }();
  return checks;
}

std::vector<Check> parse_checks(std::string_view text) {
  if (text == "all") return all_checks();
  std::vector<Check> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view token = text.substr(start, comma - start);
    const auto it = std::find_if(std::begin(kChecks), std::end(kChecks),
                                 [&](const CheckEntry& e) { return e.name == token; });
    if (it == std::end(kChecks)) throw UsageError("unknown check '" + std::string(token) + "'");
    if (std::find(out.begin(), out.end(), it->check) == out.end()) out.push_back(it->check);
    start = comma + 1;
  }
  if (out.empty()) throw UsageError("no checks selected");
  return out;
}

void SweepConfig::validate() const {
  if (trials == 0) throw UsageError("--trials must be positive");
  if (n_min < 1 || n_min > n_max) throw UsageError("--n needs 1 <= min <= max");
  if (!(p_max > 0.0 && p_max < 1.0)) throw UsageError("--pmax must lie in (0, 1)");
  if (lambda_cap && !(*lambda_cap > 0.0)) throw UsageError("--lambda-cap must be positive");
  if (checks.empty()) throw UsageError("no checks selected");
  if (!(tol >= 0.0)) throw UsageError("tolerance must be non-negative");
}

std::vector<double> sample_parameters(const SweepConfig& config, std::uint64_t trial) {
  std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(trial)));
  for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    const std::size_t n = uniform_index(rng, config.n_min, config.n_max);
    std::vector<double> p(n);
    double lambda = 0.0;
    for (auto& v : p) {
      v = config.p_max * unit_uniform(rng);
      lambda += v;
    }
    if (lambda == 0.0) continue;
    if (config.lambda_cap && lambda > *config.lambda_cap) continue;
    return p;
  }
  throw UsageError("lambda cap rejects every draw; widen --lambda-cap or lower --n/--pmax");
}

TrialOutcome evaluate_trial(const pbratio::ParameterVector& pv, const std::vector<Check>& checks,
                            double tol) {
  const pbratio::PmfVector b = pbratio::pmf(pv);
  const pbratio::RatioProfile profile = pbratio::ratio_profile(pv, b);
  const pbratio::StructureReport structure = pbratio::certify_structure(pv, b, profile, tol);
  const pbratio::BoundReport bounds = pbratio::bound_report(pv, b, profile, tol);
  const auto& sv = structure.verdicts;
  const auto& bv = bounds.verdicts;

  TrialOutcome out;
  out.results.reserve(checks.size());
  for (const Check c : checks) {
    Accumulator acc;
    switch (c) {
      case Check::Moments: {
        const double var_identity = pv.lambda() * (1.0 - pv.delta());
        add_within(acc, "variance_identity", std::abs(pv.variance() - var_identity),
                   1e-12 * std::max(1.0, pv.variance()), 0.0);
        double worst_roundtrip = 0.0;
        for (std::size_t i = 0; i < pv.size(); ++i) {
          const double q = pv.q()[i];
          worst_roundtrip = std::max(worst_roundtrip, std::abs(q / (1.0 + q) - pv.p()[i]));
        }
        add_within(acc, "odds_roundtrip", worst_roundtrip, 1e-15, 0.0);
        acc.add("delta_le_pstar", pv.p_star() - pv.delta(), pv.p_star() - pv.delta() >= -tol);
        acc.add("delta_le_lambda", pv.lambda() - pv.delta(), pv.lambda() - pv.delta() >= -tol);
        break;
      }
      case Check::Normalization: {
        double total = 0.0;
        for (const double m : b.masses) total += m;
        add_within(acc, "sum_to_one", std::abs(total - 1.0), 1e-12, 0.0);
        break;
      }
      case Check::Oracle:
        if (pv.size() <= kOracleMaxN) {
          const auto brute = pbratio::oracle::brute_pmf(pv);
          double worst = 0.0;
          for (std::size_t x = 0; x < b.size(); ++x) {
            worst = std::max(worst, std::abs(b.masses[x] - brute.masses[x]));
          }
          add_within(acc, "pmf_vs_brute", worst, 1e-12, 0.0);
        }
        break;
      case Check::Theorem1: add_named(acc, bv, {"theorem1"}); break;
      case Check::Theorem2:
        add_named(acc, bv, {"theorem2_lower", "theorem2_upper", "rho_exp_delta",
                            "exp_delta_conjecture_form"});
        break;
      case Check::Prop1: add_named(acc, sv, {"argmax_window", "window_rho"}); break;
      case Check::Prop2: add_named(acc, sv, {"ultra_log_concave"}); break;
      case Check::ArgmaxBracket: add_named(acc, sv, {"argmax_bracket"}); break;
      case Check::Fancy: add_named(acc, sv, {"fancy"}); break;
      case Check::TailRatio: add_named(acc, sv, {"tail_ratio"}); break;
      case Check::TvChain:
        add_named(acc, sv, {"b0_lower", "b0_upper"});
        add_named(acc, bv, {"barbour_hall", "remark1_primary", "remark1_pstar",
                            "remark1_exp_delta", "remark1_delta"});
        break;
      case Check::Representations:
        if (pv.size() <= kRepresentationMaxN) check_representations(acc, pv, b);
        break;
      case Check::Ray: check_ray(acc, pv, tol); break;
      case Check::Conjecture:
        out.conjecture_gap = bounds.conjecture_gap;
        break;
    }
    out.results.push_back(acc.finish());
  }
  return out;
}

SweepSummary run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t trials = config.trials;
  std::vector<TrialOutcome> outcomes(trials);
  std::vector<std::vector<double>> params(trials);

  unsigned workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::size_t>(trials, 256))));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < trials && !failed; i = next++) {
        params[i] = sample_parameters(config, i);
        const auto pv = pbratio::ParameterVector::make(params[i]);
        outcomes[i] = evaluate_trial(pv, config.checks, config.tol);
      }
    } catch (...) {
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);

  // Merge in trial order so the summary does not depend on scheduling.
  SweepSummary summary;
  summary.config = config;
  for (const Check c : config.checks) {
    if (c == Check::Conjecture) continue;
    summary.tallies.push_back(CheckTally{c, 0, 0, 0, kInf});
  }
  for (std::size_t i = 0; i < trials; ++i) {
    std::size_t tally_index = 0;
    for (std::size_t j = 0; j < config.checks.size(); ++j) {
      const Check c = config.checks[j];
      if (c == Check::Conjecture) {
        const double gap = *outcomes[i].conjecture_gap;
        if (!summary.conjecture) summary.conjecture = ConjectureScan{0, 0, kInf, 0, {}};
        auto& scan = *summary.conjecture;
        ++scan.measured;
        if (gap < 0.0) ++scan.counterexamples;
        if (gap < scan.min_gap) {
          scan.min_gap = gap;
          scan.min_trial = i;
          scan.min_p = params[i];
        }
        continue;
      }
      const CheckResult& r = outcomes[i].results[j];
      CheckTally& tally = summary.tallies[tally_index++];
      switch (r.status) {
        case Status::Skipped: ++tally.skipped; break;
        case Status::Pass: ++tally.passed; break;
        case Status::Fail:
          ++tally.failed;
          if (!summary.first_failure) {
            summary.first_failure = FailureRecord{i, c, r.failed_item, r.margin, params[i]};
          }
          break;
      }
      if (r.status != Status::Skipped) tally.min_margin = std::min(tally.min_margin, r.margin);
    }
  }
  return summary;
}

void print_summary(std::ostream& out, const SweepSummary& s) {
  const auto& c = s.config;
  out << "pb certify  seed=" << c.seed << " trials=" << c.trials << " n=" << c.n_min << ":"
      << c.n_max << " pmax=" << format_double(c.p_max);
  if (c.lambda_cap) out << " lambda-cap=" << format_double(*c.lambda_cap);
  out << "\n\n";
  out << "check                  pass      fail      skip   min margin\n";
  for (const auto& t : s.tallies) {
    std::string name(check_name(t.check));
    name.resize(std::max<std::size_t>(name.size(), 18), ' ');
    char line[160];
    std::snprintf(line, sizeof line, "%s %9zu %9zu %9zu   %s\n", name.c_str(), t.passed,
                  t.failed, t.skipped,
                  t.passed + t.failed > 0 ? format_double(t.min_margin).c_str() : "-");
    out << line;
  }
  if (s.conjecture) {
    const auto& scan = *s.conjecture;
    out << "\nconjecture rho <= 1/(1-Delta) (measured, not asserted)\n"
        << "  measured:        " << scan.measured << "\n"
        << "  min gap:         " << format_double(scan.min_gap) << " at trial " << scan.min_trial
        << "\n"
        << "  counterexamples: " << scan.counterexamples << "\n"
        << "  min-gap replay:  pb report -p " << format_param_list(scan.min_p) << "\n";
    if (scan.counterexamples > 0) {
      out << "  *** CONJECTURE COUNTEREXAMPLE FOUND ***\n";
    }
  }
  if (s.first_failure) {
    const auto& f = *s.first_failure;
    out << "\nFIRST FAILURE: trial " << f.trial << " check " << check_name(f.check) << " ("
        << f.item << ") margin " << format_double(f.margin) << "\n"
        << "  replay: pb report -p " << format_param_list(f.p) << "\n";
  }
  out << "\nresult: " << (s.passed() ? "PASS" : "FAIL") << "\n";
}

std::string summary_json(const SweepSummary& s) {
  using nlohmann::json;
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json doc;
  doc["schema_version"] = 1;
  doc["config"] = {{"seed", s.config.seed},
                   {"trials", s.config.trials},
                   {"n_min", s.config.n_min},
                   {"n_max", s.config.n_max},
                   {"p_max", s.config.p_max},
                   {"lambda_cap", s.config.lambda_cap ? json(*s.config.lambda_cap) : json(nullptr)}};
  json checks = json::array();
  for (const auto& t : s.tallies) {
    checks.push_back({{"check", std::string(check_name(t.check))},
                      {"passed", t.passed},
                      {"failed", t.failed},
                      {"skipped", t.skipped},
                      {"min_margin", num(t.min_margin)}});
  }
  doc["checks"] = checks;
  if (s.conjecture) {
    doc["conjecture"] = {{"measured", s.conjecture->measured},
                         {"counterexamples", s.conjecture->counterexamples},
                         {"min_gap", num(s.conjecture->min_gap)},
                         {"min_trial", s.conjecture->min_trial},
                         {"min_p", s.conjecture->min_p}};
  }
  if (s.first_failure) {
    doc["first_failure"] = {{"trial", s.first_failure->trial},
                            {"check", std::string(check_name(s.first_failure->check))},
                            {"item", s.first_failure->item},
                            {"margin", num(s.first_failure->margin)},
                            {"p", s.first_failure->p}};
  }
  doc["result"] = s.passed() ? "pass" : "fail";
  return doc.dump(2);
}

}  // namespace pbcli
