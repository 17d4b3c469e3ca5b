#include "bogl/probe_report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace bogl {

std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

ProbeSummary ProbeReport::summary() const {
  ProbeSummary s;
  s.count = rows.size();
  s.skipped = skipped;
  if (rows.empty()) return s;
  double sum = 0.0;
  for (const auto& r : rows) {
    s.sup = std::max(s.sup, r.ratio);
    sum += r.ratio;
  }
  s.mean = sum / static_cast<double>(rows.size());
  double var = 0.0;
  for (const auto& r : rows) var += (r.ratio - s.mean) * (r.ratio - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(rows.size()));
  return s;
}

void ProbeReport::write_csv(std::ostream& os) const {
  os << "sample,lhs,rhs,ratio,region_A,region_B,region_C\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& r : rows)
    os << r.sample << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.ratio)
       << ',' << opt(r.region_A) << ',' << opt(r.region_B) << ',' << opt(r.region_C) << '\n';
}

nlohmann::ordered_json ProbeReport::summary_json() const {
  const auto s = summary();
  nlohmann::ordered_json j;
  j["name"] = name;
  j["anchor"] = anchor;
  j["sup"] = s.sup;
  j["mean"] = s.mean;
  j["stddev"] = s.stddev;
  j["count"] = s.count;
  j["skipped"] = s.skipped;
  j["env"] = env;
  return j;
}

ProbeReport assemble_report(std::string name, std::string anchor, const std::vector<std::optional<ProbeRow>>& rows,
                            std::map<std::string, std::string> env) {
  ProbeReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.env = std::move(env);
  for (const auto& row : rows) {
    if (!row || !(row->rhs > 0.0) || !std::isfinite(row->lhs) || !std::isfinite(row->rhs)) {
      ++r.skipped;
      continue;
    }
    auto v = *row;
    v.ratio = v.lhs / v.rhs;
    r.rows.push_back(v);
  }
  return r;
}

}  // namespace bogl
