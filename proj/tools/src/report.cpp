#include "pbcli/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "pbcli/param_io.hpp"

namespace pbcli {
namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json verdicts_json(const std::vector<pbratio::Verdict>& vs) {
  json arr = json::array();
  for (const auto& v : vs) {
    arr.push_back({{"name", v.name}, {"pass", v.pass}, {"margin", number(v.margin)}, {"cases", v.cases}});
  }
  return arr;
}

json numbers(const std::vector<double>& values) {
  json arr = json::array();
  for (const double v : values) arr.push_back(number(v));
  return arr;
}

std::string fixed(double v, int digits = 10) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void print_verdicts(std::ostream& out, const std::vector<pbratio::Verdict>& vs) {
  for (const auto& v : vs) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-28s %-4s  margin %s\n", v.name.c_str(),
                  v.pass ? "ok" : "FAIL", v.cases == 0 ? "(vacuous)" : fixed(v.margin).c_str());
    out << line;
  }
}

}  // namespace

bool ReportDocument::verdict_pass() const {
  return pbratio::all_pass(bounds.verdicts) && pbratio::all_pass(structure.verdicts);
}

ReportDocument build_report(std::string source, const std::vector<double>& values, double tol) {
  auto pv = pbratio::ParameterVector::make(values);
  auto b = pbratio::pmf(pv);
  auto ratio = pbratio::ratio_profile(pv, b);
  auto structure = pbratio::certify_structure(pv, b, ratio, tol);
  auto bounds = pbratio::bound_report(pv, b, ratio, tol);
  return ReportDocument{std::move(source), std::move(pv),        std::move(b),
                        std::move(ratio),  std::move(structure), std::move(bounds), tol};
}

std::string report_json(const ReportDocument& doc, bool include_pmf) {
  const auto& pv = doc.params;
  const auto& bd = doc.bounds;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["input"] = {{"source", doc.source}, {"p", pv.p()}, {"tol", doc.tol}};
  j["moments"] = {{"n", pv.size()},
                  {"lambda", pv.lambda()},
                  {"delta", pv.delta()},
                  {"p_star", pv.p_star()},
                  {"variance", pv.variance()},
                  {"support_size", pv.support_size()},
                  {"odds", pv.q()}};
  if (include_pmf) j["pmf"] = numbers(doc.pmf.masses);
  j["ratio"] = {{"rho", doc.ratio.rho},
                {"log_rho", doc.ratio.log_rho},
                {"argmax", doc.ratio.argmax_set},
                {"argmax_window_end", pbratio::argmax_window_end(pv.lambda())},
                {"r", numbers(doc.ratio.r)},
                {"scores", numbers(doc.ratio.scores)}};
  json bounds = {{"rho", bd.rho},
                 {"log_rho", bd.log_rho},
                 {"theorem1_bound", bd.theorem1_bound},
                 {"theorem2_lower", bd.theorem2_lower ? json(*bd.theorem2_lower) : json(nullptr)},
                 {"theorem2_upper", bd.theorem2_upper ? json(*bd.theorem2_upper) : json(nullptr)},
                 {"tv_exact", bd.tv_exact},
                 {"barbour_hall", bd.barbour_hall},
                 {"remark1_primary", bd.remark1_primary},
                 {"remark1_pstar", bd.remark1_pstar},
                 {"conjecture_bound", bd.conjecture_bound}};
  if (bd.remark1_delta_chain) {
    bounds["remark1_delta_chain"] = {bd.remark1_delta_chain->first, bd.remark1_delta_chain->second};
  } else {
    bounds["remark1_delta_chain"] = nullptr;
  }
  bounds["verdicts"] = verdicts_json(bd.verdicts);
  j["bounds"] = bounds;
  j["structure"] = {{"verdicts", verdicts_json(doc.structure.verdicts)},
                    {"min_relative_decrease", number(doc.structure.min_relative_decrease)}};
  j["conjecture"] = {{"gap", bd.conjecture_gap},
                     {"counterexample", doc.conjecture_counterexample()}};
  j["verdict"] = doc.verdict_pass() ? "pass" : "fail";
  return j.dump(2);
}

void print_report(std::ostream& out, const ReportDocument& doc, bool include_pmf) {
  const auto& pv = doc.params;
  const auto& bd = doc.bounds;
  out << "input      " << doc.source << "  n=" << pv.size() << "\n"
      << "p          " << format_param_list(pv.p()) << "\n\n"
      << "lambda     " << fixed(pv.lambda()) << "\n"
      << "Delta      " << fixed(pv.delta()) << "\n"
      << "p*         " << fixed(pv.p_star()) << "\n"
      << "variance   " << fixed(pv.variance()) << "\n\n";
  if (include_pmf) {
    out << "  x  b(x)                  pi(x)                 r(x)\n";
    const auto pi = pbratio::poisson_pmf(pv.lambda(), doc.pmf.size() - 1);
    for (std::size_t x = 0; x < doc.pmf.size(); ++x) {
      char line[160];
      std::snprintf(line, sizeof line, "%3zu  %-20.14g  %-20.14g  %.14g\n", x, doc.pmf.masses[x],
                    pi.masses[x], doc.ratio.r[x]);
      out << line;
    }
    out << "\n";
  }
  out << "rho        " << fixed(bd.rho) << "\n"
      << "log rho    " << fixed(bd.log_rho) << "\n"
      << "argmax     {";
  for (std::size_t i = 0; i < doc.ratio.argmax_set.size(); ++i) {
    out << (i ? "," : "") << doc.ratio.argmax_set[i];
  }
  out << "}  window [1," << pbratio::argmax_window_end(pv.lambda()) << "]\n\n"
      << "theorem 1 bound 1/(1-p*)          " << fixed(bd.theorem1_bound) << "\n";
  if (bd.theorem2_lower) {
    out << "theorem 2 bracket on log rho   [" << fixed(*bd.theorem2_lower) << ", "
        << fixed(*bd.theorem2_upper) << "]\n";
  } else {
    out << "theorem 2 bracket on log rho   n/a (lambda > 1)\n";
  }
  out << "tv exact                          " << fixed(bd.tv_exact) << "\n"
      << "Barbour-Hall (1-e^-lambda)Delta   " << fixed(bd.barbour_hall) << "\n"
      << "min(1,lambda)(1-1/rho)            " << fixed(bd.remark1_primary) << "\n"
      << "min(1,lambda) p*                  " << fixed(bd.remark1_pstar) << "\n";
  if (bd.remark1_delta_chain) {
    out << "lambda(1-e^-Delta), lambda Delta  " << fixed(bd.remark1_delta_chain->first) << ", "
        << fixed(bd.remark1_delta_chain->second) << "\n";
  }
  out << "\nbound verdicts\n";
  print_verdicts(out, bd.verdicts);
  out << "structure verdicts\n";
  print_verdicts(out, doc.structure.verdicts);
  out << "\nconjecture 1/(1-Delta) - rho      " << fixed(bd.conjecture_gap)
      << (doc.conjecture_counterexample() ? "   *** CONJECTURE COUNTEREXAMPLE ***" : "") << "\n"
      << "verdict    " << (doc.verdict_pass() ? "PASS" : "FAIL") << "\n";
}

}  // namespace pbcli
