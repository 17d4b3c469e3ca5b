#pragma once

// Per-sample ratio reports shared by every estimate probe.
//
// CSV schema (one row per evaluated sample):
//   sample,lhs,rhs,ratio,region_A,region_B,region_C
// Region columns are empty for probes without a region split. Numbers use
// the shortest round-trip decimal form, so equal reports are byte-identical.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bogl {

struct ProbeRow {
  std::size_t sample = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::optional<double> region_A, region_B, region_C;
};

struct ProbeSummary {
  double sup = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // population
  std::size_t count = 0;
  std::size_t skipped = 0;
};

struct ProbeReport {
  std::string name;
  std::string anchor;  // human-readable label of the estimate being probed
  std::vector<ProbeRow> rows;
  std::size_t skipped = 0;
  std::map<std::string, std::string> env;

  ProbeSummary summary() const;
  void write_csv(std::ostream& os) const;
  nlohmann::ordered_json summary_json() const;
};

// Shortest round-trip decimal.
std::string format_double(double v);

// Collects per-sample outcomes (ratio rows or skips) in sample order.
// lhs/rhs pairs with rhs == 0 or non-finite values count as skipped.
ProbeReport assemble_report(std::string name, std::string anchor, const std::vector<std::optional<ProbeRow>>& rows,
                            std::map<std::string, std::string> env = {});

}  // namespace bogl
