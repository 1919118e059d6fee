#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pbratio/bounds.hpp"
#include "pbratio/parameters.hpp"
#include "pbratio/pmf.hpp"
#include "pbratio/ratio.hpp"

namespace pbcli {

inline constexpr int kReportSchemaVersion = 1;

/// Everything `pb report` prints, for one parameter vector.
struct ReportDocument {
  std::string source;  // "list" or the parameter file path
  pbratio::ParameterVector params;
  pbratio::PmfVector pmf;
  pbratio::RatioProfile ratio;
  pbratio::StructureReport structure;
  pbratio::BoundReport bounds;
  double tol = 0.0;

  /// Pass iff every bound and structure verdict passes. The conjecture gap
  /// is reported separately and never affects this.
  bool verdict_pass() const;
  bool conjecture_counterexample() const { return bounds.conjecture_gap < 0.0; }
};

ReportDocument build_report(std::string source, const std::vector<double>& values, double tol);

std::string report_json(const ReportDocument& doc, bool include_pmf);
void print_report(std::ostream& out, const ReportDocument& doc, bool include_pmf);

}  // namespace pbcli
