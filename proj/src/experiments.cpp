#include "bogl/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "bogl/bilinear.hpp"
#include "bogl/calculus.hpp"
#include "bogl/dynamics.hpp"
#include "bogl/errors.hpp"
#include "bogl/gauge.hpp"
#include "bogl/linear_probes.hpp"
#include "bogl/littlewood_paley.hpp"
#include "bogl/probe_report.hpp"
#include "bogl/random_fields.hpp"
#include "bogl/snapshot.hpp"
#include "bogl/spacetime.hpp"
#include "json.hpp"

namespace bogl::experiments {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr double kHuge = std::numeric_limits<double>::max();

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t a = 0;
  for (;;) {
    const auto b = s.find(sep, a);
    out.push_back(trim(std::string_view(s).substr(a, b == std::string::npos ? std::string::npos : b - a)));
    if (b == std::string::npos) break;
    a = b + 1;
  }
  return out;
}

std::optional<double> parse_real(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const auto a = parse_real(trim(std::string_view(s).substr(0, slash)));
    const auto b = parse_real(trim(std::string_view(s).substr(slash + 1)));
    if (!a || !b || *b == 0.0) return std::nullopt;
    return *a / *b;
  }
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

const KeyValues kCommon = {{"seed", "0"}, {"out_dir", "out"}};

KeyValues with_common(KeyValues kv) {
  kv.insert(kCommon.begin(), kCommon.end());
  return kv;
}

const KeyValues kTruncationKeys = {{"truncations", "20,24,32,40,48"},
                                   {"trunc_kmax", "80"},
                                   {"trunc_decay", "1"},
                                   {"trunc_amplitude", "0.5"}};

const std::map<Kind, KeyValues>& default_table() {
  static const std::map<Kind, KeyValues> table = [] {
    std::map<Kind, KeyValues> t;
    t[Kind::simulate] = with_common({{"n", "256"},
                                     {"lambda", "1"},
                                     {"dt", "1e-3"},
                                     {"t_end", "1"},
                                     {"dealias", "2/3"},
                                     {"snapshot_stride", "100"},
                                     {"init", "random"},
                                     {"modes", "1:1"},
                                     {"amplitude", "1"},
                                     {"decay", "2"},
                                     {"kmax", "8"},
                                     {"assert_momentum_drift", "1e-10"},
                                     {"assert_energy_drift", "1e-8"}});
    t[Kind::gauge_check] = with_common({{"traj", ""}, {"oversample", "4"}, {"assert_rel_gap", "1e-10"}});
    t[Kind::lp_decompose] = with_common({{"snapshot", ""},
                                         {"n", "256"},
                                         {"lambda", "1"},
                                         {"decay", "1"},
                                         {"kmax", "-1"},
                                         {"assert_reconstruction", "1e-12"}});
    t[Kind::norm_sweep] = with_common({{"n", "32"},
                                       {"lambda", "1"},
                                       {"M", "64"},
                                       {"T", "6.283185307179586"},
                                       {"samples", "20"},
                                       {"kmax", "8"},
                                       {"s", "0,0.5"},
                                       {"b", "0.375,0.5"}});
    t[Kind::bilinear_probe] = with_common({{"which", "bilincrit_X"},
                                           {"s", "0"},
                                           {"samples", "100"},
                                           {"n", "32"},
                                           {"M", "256"},
                                           {"lambda", "1"},
                                           {"kmax", "8"},
                                           {"assert_region_sum", "1e-10"}});
    t[Kind::probe_suite] = with_common({{"probes", "all"},
                                        {"s", "0.25"},
                                        {"samples", "20"},
                                        {"n", "32"},
                                        {"M", "256"},
                                        {"T", "6.283185307179586"},
                                        {"lambda", "1"},
                                        {"kmax", "8"},
                                        {"duhamel_refine", "8"},
                                        {"a_minus", "1"},
                                        {"a_plus", "1"},
                                        {"mu_max", "1e4"},
                                        {"mu_points", "40"},
                                        {"assert_region_sum", "1e-10"}});
    KeyValues flow = {{"n", "256"},        {"lambda", "1"}, {"dt", "1e-3"},
                      {"t_end", "0.5"},    {"snapshot_stride", "10"}, {"s", "0"},
                      {"assert_monotone", "0"}};
    flow.insert(kTruncationKeys.begin(), kTruncationKeys.end());
    t[Kind::flowmap_continuity] = with_common(flow);
    KeyValues lip = flow;
    lip.insert({{"samples", "4"},
                {"deltas", "0.1,0.01,0.001"},
                {"cutoff", "8"},
                {"kmax", "24"},
                {"pert_kmax", "48"},
                {"decay", "1"},
                {"amplitude", "0.5"},
                {"oversample", "4"},
                {"assert_variation", "0.1"}});
    t[Kind::lipschitz_pairs] = with_common(lip);
    t[Kind::scaling_check] = with_common({{"n", "256"},
                                          {"lambda0", "4"},
                                          {"scale", "4"},
                                          {"dt", "1e-3"},
                                          {"t", "0.25"},
                                          {"snapshot_stride", "50"},
                                          {"decay", "2"},
                                          {"kmax", "8"},
                                          {"amplitude", "0.25"},
                                          {"assert_norm", "1e-12"},
                                          {"assert_correspondence", "1e-6"}});
    return t;
  }();
  return table;
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) {
    if (!s.empty()) s += ',';
    s += c;
  }
  return s + '\n';
}

std::string fmt(double v) { return format_double(v); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SpatialGrid grid_from(const Params& p, const std::string& n = "n", const std::string& lambda = "lambda") {
  const long N = p.integer(n);
  if (N <= 0) throw ConfigError(n + " must be positive");
  return make_grid(static_cast<std::size_t>(N), p.real(lambda));
}

RealField normalized_linf(RealField f, double amplitude) {
  const double m = lebesgue_norm(f, kLinf);
  if (m > 0.0) f *= amplitude / m;
  return f;
}

RealField random_data(const SpatialGrid& g, std::uint64_t seed, std::uint64_t id, std::uint64_t sample, double decay,
                      long kmax, double amplitude, bool mean_zero) {
  rng::Stream st(seed, id, sample);
  Spectrum sp;
  sp.decay = decay;
  sp.kmax = kmax;
  sp.mean_zero = mean_zero;
  return normalized_linf(random_real(g, st, sp), amplitude);
}

SimConfig sim_config(const Params& p, const SpatialGrid& g, double t_end) {
  SimConfig c;
  c.grid = g;
  c.dt = p.real("dt");
  c.t_end = t_end;
  const long stride = p.integer("snapshot_stride");
  if (stride <= 0) throw ConfigError("snapshot_stride must be positive");
  c.snapshot_stride = static_cast<std::size_t>(stride);
  c.seed = p.u64("seed");
  return c;
}

double relative_drift(double v, double v0) { return v0 != 0.0 ? std::abs(v - v0) / std::abs(v0) : std::abs(v - v0); }

std::string snapshot_bytes(const RealField& f, double t) {
  std::ostringstream os(std::ios::binary);
  snapshot::write(os, f, t);
  return os.str();
}

// ---------------------------------------------------------------- simulate

Outcome run_simulate(const Params& p, RunWriter& w) {
  const auto g = grid_from(p);
  SimConfig cfg = sim_config(p, g, p.real("t_end"));
  cfg.dealias = p.real("dealias");

  const auto init = p.str("init");
  RealField u0(g);
  if (init == "random") {
    u0 = random_data(g, p.u64("seed"), 1, 0, p.real("decay"), p.integer("kmax"), p.real("amplitude"), false);
  } else if (init == "modes") {
    std::vector<std::pair<long, double>> modes;
    for (const auto& m : p.words("modes")) {
      const auto parts = split(m, ':');
      const auto a = parts.size() == 2 ? parse_real(parts[1]) : std::nullopt;
      const auto j = parts.size() == 2 ? parse_real(parts[0]) : std::nullopt;
      if (!a || !j || *j != std::round(*j)) throw ConfigError("modes entries must be j:amplitude, got '" + m + "'");
      modes.emplace_back(static_cast<long>(*j), *a);
    }
    u0 = RealField::from_samples(g, [&] {
      std::vector<double> s(g.size());
      for (std::size_t k = 0; k < g.size(); ++k)
        for (auto [j, a] : modes) s[k] += a * std::cos(static_cast<double>(j) * g.x(k) / g.lambda());
      return s;
    }());
  } else if (init != "zero") {
    throw ConfigError("init must be zero, modes or random");
  }

  const auto tr = simulate(u0, cfg);
  std::string diag = "t,M,E,Linf\n";
  double m_drift = 0.0, e_drift = 0.0;
  const auto& d0 = tr.diagnostics.front();
  for (const auto& d : tr.diagnostics) {
    diag += csv_line({fmt(d.t), fmt(d.momentum), fmt(d.energy), fmt(d.linf)});
    m_drift = std::max(m_drift, relative_drift(d.momentum, d0.momentum));
    e_drift = std::max(e_drift, relative_drift(d.energy, d0.energy));
  }
  w.write("diagnostics.csv", diag);
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06zu.bin", i);
    w.write(name, snapshot_bytes(tr.states[i], tr.times[i]));
  }
  return {{at_most("momentum_drift", m_drift, p.real("assert_momentum_drift")),
           at_most("energy_drift", e_drift, p.real("assert_energy_drift"))}};
}

// ---------------------------------------------------------------- gauge-check

Trajectory load_trajectory(const fs::path& dir) {
  if (dir.empty()) throw ConfigError("gauge-check needs a trajectory directory (traj)");
  if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".bin") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Trajectory tr;
  for (const auto& f : files) {
    auto s = snapshot::load(f);
    if (!std::holds_alternative<RealField>(s.field)) throw ConfigError("complex snapshot in trajectory: " + f.string());
    tr.times.push_back(s.time);
    tr.states.push_back(std::get<RealField>(std::move(s.field)));
  }
  return tr;
}

Outcome run_gauge_check(const Params& p, RunWriter& w) {
  const auto tr = load_trajectory(p.str("traj"));
  gauge::Options o;
  const long os = p.integer("oversample");
  if (os < 1) throw ConfigError("oversample must be >= 1");
  o.oversample = static_cast<std::size_t>(os);
  const auto reduced = gauge::reduce_trajectory(tr);
  const auto rows = gauge::gauge_residual(reduced, o);
  const auto ablated = gauge::gauge_residual(reduced, o, false);
  std::string res = "t,residual_L2,mean_term,residual_L2_ablated\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    res += csv_line({fmt(rows[i].t), fmt(rows[i].residual), fmt(rows[i].mean_term), fmt(ablated[i].residual)});
  w.write("gauge_residual.csv", res);
  std::string rec = "t,rel_gap\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < reduced.states.size(); ++i) {
    const double gap = gauge::reconstruct_high(reduced.states[i], o).rel_gap;
    worst = std::max(worst, gap);
    rec += csv_line({fmt(reduced.times[i]), fmt(gap)});
  }
  w.write("reconstruction.csv", rec);
  return {{at_most("reconstruction_rel_gap", worst, p.real("assert_rel_gap"))}};
}

// ---------------------------------------------------------------- lp-decompose

Outcome run_lp_decompose(const Params& p, RunWriter& w) {
  ComplexField f;
  if (const auto path = p.str("snapshot"); !path.empty()) {
    auto s = snapshot::load(path);
    f = std::holds_alternative<RealField>(s.field) ? to_complex(std::get<RealField>(s.field))
                                                   : std::get<ComplexField>(s.field);
  } else {
    const auto g = grid_from(p);
    rng::Stream st(p.u64("seed"), 2, 0);
    Spectrum sp;
    sp.decay = p.real("decay");
    sp.kmax = p.integer("kmax");
    f = random_complex(g, st, sp);
  }
  const auto dec = lp::decompose(f);
  auto mass = [](const ComplexField& v) { return std::pow(lebesgue_norm(v, 2), 2); };
  std::string csv = "N,mass\n" + csv_line({"0", fmt(mass(dec.low))});
  for (const auto& [N, part] : dec.shells) csv += csv_line({fmt(N), fmt(mass(part))});
  w.write("lp_shells.csv", csv);
  return {{at_most("reconstruction_rel_gap", relative_gap(dec.sum(), f), p.real("assert_reconstruction"))}};
}

// ---------------------------------------------------------------- norm-sweep

Outcome run_norm_sweep(const Params& p, RunWriter& w) {
  const long M = p.integer("M"), samples = p.integer("samples");
  if (M <= 0 || samples < 0) throw ConfigError("M must be positive and samples non-negative");
  const auto g = make_spacetime_grid(grid_from(p), static_cast<std::size_t>(M), p.real("T"));
  const auto ss = p.reals("s"), bs = p.reals("b");
  std::string csv = "sample_id,s,b,x_norm,z_norm,y_norm,l4,ratio_z_x,ratio_l4_x038\n";
  std::size_t bad = 0;
  for (long i = 0; i < samples; ++i) {
    rng::Stream st(p.u64("seed"), 300, static_cast<std::uint64_t>(i));
    SpaceTimeSpectrum sp;
    sp.decay_xi = kSampleDecays[static_cast<std::size_t>(i) % 3];
    sp.decay_sigma = 0.5;
    sp.kmax = p.integer("kmax");
    sp.real = true;
    const auto u = random_spacetime(g, st, sp);
    const double l4 = st_lebesgue(u, 4), x38 = x_norm(u, 0.0, 0.375);
    for (double s : ss) {
      const double y = y_norm(u, s);
      for (double b : bs) {
        const double x = x_norm(u, s, b), z = z_norm(u, s, b);
        const double r1 = z / x, r2 = l4 / x38;
        for (double v : {x, z, y, l4, r1, r2}) bad += std::isfinite(v) ? 0 : 1;
        csv += csv_line({std::to_string(i), fmt(s), fmt(b), fmt(x), fmt(z), fmt(y), fmt(l4), fmt(r1), fmt(r2)});
      }
    }
  }
  w.write("norm_sweep.csv", csv);
  return {{at_most("non_finite_values", static_cast<double>(bad), 0.0)}};
}

// ---------------------------------------------------------------- probes

bilinear::BilinearProbeConfig bilinear_config(const Params& p) {
  bilinear::BilinearProbeConfig c;
  c.s = p.real("s");
  const long samples = p.integer("samples"), n = p.integer("n"), M = p.integer("M");
  if (samples < 0 || n <= 0 || M <= 0) throw ConfigError("samples, n and M must be non-negative");
  c.samples = static_cast<std::size_t>(samples);
  c.seed = p.u64("seed");
  c.n = static_cast<std::size_t>(n);
  c.M = static_cast<std::size_t>(M);
  c.lambda = p.real("lambda");
  c.kmax = p.integer("kmax");
  return c;
}

// Worst relative mismatch between the region columns and the pairing totals.
double region_sum_gap(const ProbeReport& r, const std::vector<double>& pairings) {
  if (r.rows.size() != pairings.size()) return kHuge;
  double worst = 0.0;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    if (!row.region_A || !row.region_B || !row.region_C) return kHuge;
    const double sum = *row.region_A + *row.region_B + *row.region_C;
    worst = std::max(worst, std::abs(sum - pairings[i]) / std::max(std::abs(pairings[i]), 1e-300));
  }
  return worst;
}

bool has_regions(bilinear::Estimate e) {
  return e == bilinear::Estimate::bilincrit_X || e == bilinear::Estimate::bilincrit_Ztilde;
}

void write_report(RunWriter& w, const ProbeReport& r) {
  std::ostringstream os;
  r.write_csv(os);
  w.write(r.name + ".csv", os.str());
}

Outcome run_bilinear_probe(const Params& p, RunWriter& w) {
  const auto c = bilinear_config(p);
  const auto which = p.str("which");
  Outcome out;
  ProbeReport r;
  if (which == "exp_multiplication") {
    r = bilinear::exp_multiplication_probe(c);
  } else {
    bilinear::Estimate e;
    try {
      e = bilinear::parse_estimate(which);
    } catch (const UsageError& err) {
      throw ConfigError(err.what());
    }
    std::vector<double> pairings;
    r = bilinear::estimate_probe(e, c, &pairings);
    if (has_regions(e)) out.checks.push_back(at_most("region_sum_gap", region_sum_gap(r, pairings), p.real("assert_region_sum")));
  }
  write_report(w, r);
  w.write(r.name + ".json", dump(r.summary_json()));
  if (!r.rows.empty()) out.checks.insert(out.checks.begin(), at_most("sup_ratio", r.summary().sup, kHuge));
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v = {"homogeneous_linear", "duhamel_Y",     "duhamel_X",
                                  "time_localization",  "strichartz_L4", "embedding_Z"};
    for (auto e : bilinear::kAllEstimates) v.emplace_back(bilinear::estimate_name(e));
    v.emplace_back("exp_multiplication");
    v.emplace_back("calculus_lemma");
    return v;
  }();
  return names;
}

Outcome run_probe_suite(const Params& p, RunWriter& w) {
  std::vector<std::string> selected;
  for (const auto& name : p.words("probes")) {
    if (name == "all") {
      for (const auto& n : suite_names())
        if (std::find(selected.begin(), selected.end(), n) == selected.end()) selected.push_back(n);
    } else if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      throw ConfigError("unknown probe '" + name + "'");
    } else if (std::find(selected.begin(), selected.end(), name) == selected.end()) {
      selected.push_back(name);
    }
  }

  const auto bc = bilinear_config(p);
  LinearProbeConfig lc;
  lc.n = bc.n;
  lc.lambda = bc.lambda;
  lc.M = bc.M;
  lc.T = p.real("T");
  lc.s = bc.s;
  lc.kmax = bc.kmax;
  lc.samples = bc.samples;
  lc.seed = bc.seed;
  const long refine = p.integer("duhamel_refine");
  if (refine < 1) throw ConfigError("duhamel_refine must be >= 1");
  lc.duhamel_refine = static_cast<std::size_t>(refine);
  const long mu_points = p.integer("mu_points");
  if (mu_points < 2) throw ConfigError("mu_points must be >= 2");

  json probes = json::array(), failures = json::array();
  std::vector<std::string> anchors;
  Outcome out;
  for (const auto& name : selected) {
    try {
      ProbeReport r;
      std::optional<double> gap;
      if (name == "homogeneous_linear") r = homogeneous_probe(lc);
      else if (name == "duhamel_Y") r = duhamel_y_probe(lc);
      else if (name == "duhamel_X") r = duhamel_x_probe(lc);
      else if (name == "time_localization") r = time_localization_probe(lc);
      else if (name == "strichartz_L4") r = strichartz_probe(lc);
      else if (name == "embedding_Z") r = embedding_probe(lc);
      else if (name == "exp_multiplication") r = bilinear::exp_multiplication_probe(bc);
      else if (name == "calculus_lemma")
        r = calculus::calculus_lemma_check(p.real("a_minus"), p.real("a_plus"),
                                           {p.real("mu_max"), static_cast<std::size_t>(mu_points)});
      else {
        const auto e = bilinear::parse_estimate(name);
        std::vector<double> pairings;
        r = bilinear::estimate_probe(e, bc, &pairings);
        if (has_regions(e)) gap = region_sum_gap(r, pairings);
      }
      write_report(w, r);
      probes.push_back(r.summary_json());
      anchors.push_back(r.anchor);
      if (!r.rows.empty()) out.checks.push_back(at_most(name + ".sup_ratio", r.summary().sup, kHuge));
      if (gap) out.checks.push_back(at_most(name + ".region_sum_gap", *gap, p.real("assert_region_sum")));
    } catch (const std::exception& e) {
      failures.push_back({{"name", name}, {"error", e.what()}});
    }
  }
  json summary;
  summary["probes"] = std::move(probes);
  summary["anchors"] = anchors;
  summary["failures"] = failures;
  w.write("summary.json", dump(summary));
  out.checks.push_back(at_most("probe_failures", static_cast<double>(failures.size()), 0.0));
  return out;
}

// ---------------------------------------------------------------- well-posedness studies

std::vector<double> sup_over_time(const Trajectory& a, const Trajectory& b, double s) {
  std::vector<double> gaps;
  for (std::size_t i = 0; i < a.states.size(); ++i) gaps.push_back(sobolev_norm(a.states[i] - b.states[i], s));
  return gaps;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

Outcome truncation_sweep(const Params& p, RunWriter& w) {
  const auto g = grid_from(p);
  const auto cfg = sim_config(p, g, p.real("t_end"));
  const double s = p.real("s");
  const auto u0 = random_data(g, p.u64("seed"), 402, 0, p.real("trunc_decay"), p.integer("trunc_kmax"),
                              p.real("trunc_amplitude"), true);
  const auto ref = simulate(u0, cfg);
  std::string csv = "j,data_gap,solution_gap\n";
  double prev = kHuge;
  std::size_t violations = 0;
  for (long j : p.integers("truncations")) {
    auto c = u0.coeffs();
    for (std::size_t k = 0; k < g.size(); ++k)
      if (std::abs(g.xi(k)) > static_cast<double>(j)) c[k] = 0.0;
    const RealField uj(g, std::move(c));
    const double data_gap = sobolev_norm(uj - u0, s);
    const double sol_gap = max_of(sup_over_time(simulate(uj, cfg), ref, s));
    if (!(sol_gap < prev)) ++violations;
    prev = sol_gap;
    csv += csv_line({std::to_string(j), fmt(data_gap), fmt(sol_gap)});
  }
  w.write("truncation.csv", csv);
  return {{at_most("truncation_monotone_violations", static_cast<double>(violations), p.real("assert_monotone"))}};
}

Outcome run_lipschitz_pairs(const Params& p, RunWriter& w) {
  const auto g = grid_from(p);
  const auto cfg = sim_config(p, g, p.real("t_end"));
  const double s = p.real("s"), cutoff = p.real("cutoff");
  const long samples = p.integer("samples");
  if (samples < 0) throw ConfigError("samples must be non-negative");
  gauge::Options o;
  o.oversample = static_cast<std::size_t>(std::max(1L, p.integer("oversample")));
  const auto deltas = p.reals("deltas");

  std::string csv = "sample,delta,ratio_u,ratio_w,ratio_F\n";
  json variation = json::array();
  double worst = 0.0;
  for (long i = 0; i < samples; ++i) {
    const auto si = static_cast<std::uint64_t>(i);
    const auto phi1 = random_data(g, p.u64("seed"), 400, si, p.real("decay"), p.integer("kmax"), p.real("amplitude"), true);
    rng::Stream st(p.u64("seed"), 401, si);
    Spectrum sp;
    sp.decay = p.real("decay");
    sp.kmin = static_cast<long>(std::ceil(cutoff * g.lambda()));
    sp.kmax = p.integer("pert_kmax");
    sp.mean_zero = true;
    auto dir = random_real(g, st, sp);
    for (std::size_t k = 0; k < g.size(); ++k)
      if (std::abs(g.xi(k)) < cutoff && dir.coeffs()[k] != 0.0) throw DomainError("perturbation touches |xi| < cutoff");
    const double dn = lebesgue_norm(dir, 2);
    if (!(dn > 0.0)) throw DomainError("perturbation spectrum is empty");

    const auto tr1 = simulate(phi1, cfg);
    std::vector<ComplexField> w1;
    for (const auto& u : tr1.states) w1.push_back(gauge::gauge_w(u, o));

    double lo = kHuge, hi = 0.0;
    for (double delta : deltas) {
      if (delta == 0.0) continue;  // ratio undefined
      auto pert = dir;
      pert *= delta / dn;
      const auto phi2 = phi1 + pert;
      const double d_hs = sobolev_norm(pert, s), d_l2 = lebesgue_norm(pert, 2);
      const auto tr2 = simulate(phi2, cfg);
      double ru = 0.0, rw = 0.0, rF = 0.0;
      for (std::size_t t = 0; t < tr2.states.size(); ++t) {
        ru = std::max(ru, sobolev_norm(tr1.states[t] - tr2.states[t], s) / d_hs);
        rw = std::max(rw, lebesgue_norm(w1[t] - gauge::gauge_w(tr2.states[t], o), 2) / d_l2);
        rF = std::max(rF, gauge::primitive_gap(tr1.states[t], tr2.states[t]).first / d_l2);
      }
      lo = std::min(lo, ru);
      hi = std::max(hi, ru);
      csv += csv_line({std::to_string(i), fmt(delta), fmt(ru), fmt(rw), fmt(rF)});
    }
    const double v = hi > 0.0 ? hi / lo - 1.0 : 0.0;
    variation.push_back(v);
    worst = std::max(worst, v);
  }
  w.write("lipschitz.csv", csv);
  json summary;
  summary["variation"] = variation;
  summary["max_variation"] = worst;
  w.write("lipschitz.json", dump(summary));
  auto out = truncation_sweep(p, w);
  out.checks.insert(out.checks.begin(), at_most("delta_variation", worst, p.real("assert_variation")));
  return out;
}

Outcome run_scaling_check(const Params& p, RunWriter& w) {
  const double lambda0 = p.real("lambda0"), scale = p.real("scale"), t = p.real("t");
  const long N = p.integer("n");
  if (N <= 0) throw ConfigError("n must be positive");
  const auto g = make_grid(static_cast<std::size_t>(N), lambda0);
  const auto u0 = random_data(g, p.u64("seed"), 403, 0, p.real("decay"), p.integer("kmax"), p.real("amplitude"), false);
  const auto v0 = rescale(u0, scale);
  const double ratio = lebesgue_norm(v0, 2) / lebesgue_norm(u0, 2), expected = std::sqrt(scale);
  const double norm_error = std::abs(ratio - expected) / expected;

  const auto cb = sim_config(p, v0.grid(), t);
  auto ca = sim_config(p, g, scale * scale * t);
  ca.snapshot_stride = static_cast<std::size_t>(std::llround(static_cast<double>(cb.snapshot_stride) * scale * scale));
  const auto a = simulate(u0, ca);
  const auto b = simulate(v0, cb);
  if (a.states.size() != b.states.size()) throw ConfigError("t and snapshot_stride do not give matching snapshots");
  std::string csv = "t,rel_gap\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < b.states.size(); ++i) {
    const double gap = relative_gap(rescale(a.states[i], scale), b.states[i]);
    worst = std::max(worst, gap);
    csv += csv_line({fmt(b.times[i]), fmt(gap)});
  }
  w.write("scaling.csv", csv);
  json summary;
  summary["norm_ratio"] = ratio;
  summary["expected"] = expected;
  summary["norm_rel_error"] = norm_error;
  summary["max_rel_gap"] = worst;
  w.write("scaling.json", dump(summary));
  return {{at_most("norm_rel_error", norm_error, p.real("assert_norm")),
           at_most("correspondence_rel_gap", worst, p.real("assert_correspondence"))}};
}

}  // namespace

// ---------------------------------------------------------------- config

KeyValues parse_config(std::istream& is) {
  KeyValues kv;
  std::string line;
  std::size_t no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(no) + ": expected key = value");
    const auto key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(no) + ": empty key");
    if (!kv.emplace(key, trim(std::string_view(t).substr(eq + 1))).second)
      throw ConfigError("line " + std::to_string(no) + ": repeated key '" + key + "'");
  }
  return kv;
}

KeyValues load_config(const std::filesystem::path& p) {
  std::ifstream is(p);
  if (!is) throw ConfigError("cannot read config " + p.string());
  return parse_config(is);
}

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> k = {Kind::simulate,        Kind::gauge_check,   Kind::lp_decompose,
                                      Kind::norm_sweep,      Kind::bilinear_probe, Kind::probe_suite,
                                      Kind::lipschitz_pairs, Kind::scaling_check, Kind::flowmap_continuity};
  return k;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::simulate: return "simulate";
    case Kind::gauge_check: return "gauge-check";
    case Kind::lp_decompose: return "lp-decompose";
    case Kind::norm_sweep: return "norm-sweep";
    case Kind::bilinear_probe: return "bilinear-probe";
    case Kind::probe_suite: return "probe-suite";
    case Kind::lipschitz_pairs: return "lipschitz-pairs";
    case Kind::scaling_check: return "scaling-check";
    case Kind::flowmap_continuity: return "flowmap-continuity";
  }
  return "?";
}

Kind parse_kind(std::string_view name) {
  for (auto k : all_kinds())
    if (name == kind_name(k)) return k;
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

const KeyValues& defaults(Kind k) { return default_table().at(k); }

Params::Params(Kind kind, const KeyValues& given) : kind_(kind), values_(defaults(kind)) {
  for (const auto& [k, v] : given) {
    auto it = values_.find(k);
    if (it == values_.end()) throw ConfigError(std::string("unknown key '") + k + "' for " + kind_name(kind));
    it->second = v;
  }
}

std::string Params::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
  return it->second;
}

double Params::real(const std::string& key) const {
  const auto v = parse_real(str(key));
  if (!v || !std::isfinite(*v)) throw ConfigError("key '" + key + "' is not a finite number");
  return *v;
}

long Params::integer(const std::string& key) const {
  const auto s = str(key);
  long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("key '" + key + "' is not an integer");
  return v;
}

std::uint64_t Params::u64(const std::string& key) const {
  const auto s = str(key);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("key '" + key + "' is not an unsigned integer");
  return v;
}

bool Params::flag(const std::string& key) const {
  const auto s = str(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("key '" + key + "' is not a boolean");
}

std::vector<std::string> Params::words(const std::string& key) const {
  const auto s = str(key);
  if (trim(s).empty()) return {};
  auto out = split(s, ',');
  for (const auto& w : out)
    if (w.empty()) throw ConfigError("key '" + key + "' has an empty list entry");
  return out;
}

std::vector<double> Params::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& w : words(key)) {
    const auto v = parse_real(w);
    if (!v || !std::isfinite(*v)) throw ConfigError("key '" + key + "' has a non-numeric entry '" + w + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<long> Params::integers(const std::string& key) const {
  std::vector<long> out;
  for (const auto& w : words(key)) {
    long v = 0;
    const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size())
      throw ConfigError("key '" + key + "' has a non-integer entry '" + w + "'");
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------- outputs

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunWriter::RunWriter(std::filesystem::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

void RunWriter::write(const std::string& name, const std::string& bytes) {
  std::lock_guard lock(mu_);
  std::ofstream os(dir_ / name, std::ios::binary | std::ios::trunc);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
  entries_[name] = {name, bytes.size(), fnv1a64(bytes)};
}

std::vector<RunWriter::Entry> RunWriter::entries() const {
  std::lock_guard lock(mu_);
  std::vector<Entry> out;
  for (const auto& [name, e] : entries_) out.push_back(e);
  return out;
}

Check at_most(std::string name, double value, double limit) {
  return {std::move(name), value, limit, std::isfinite(value) && value <= limit};
}

bool Outcome::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Outcome run(const Params& p, RunWriter& w) {
  switch (p.kind()) {
    case Kind::simulate: return run_simulate(p, w);
    case Kind::gauge_check: return run_gauge_check(p, w);
    case Kind::lp_decompose: return run_lp_decompose(p, w);
    case Kind::norm_sweep: return run_norm_sweep(p, w);
    case Kind::bilinear_probe: return run_bilinear_probe(p, w);
    case Kind::probe_suite: return run_probe_suite(p, w);
    case Kind::lipschitz_pairs: return run_lipschitz_pairs(p, w);
    case Kind::scaling_check: return run_scaling_check(p, w);
    case Kind::flowmap_continuity: return truncation_sweep(p, w);
  }
  throw ConfigError("unknown experiment kind");
}

void write_manifest(const Params& p, RunWriter& w, const Outcome& o) {
  json m;
  m["kind"] = kind_name(p.kind());
  m["config"] = p.resolved();
  json files = json::array();
  for (const auto& e : w.entries()) files.push_back({{"name", e.name}, {"bytes", e.bytes}, {"fnv1a64", hex64(e.hash)}});
  m["files"] = std::move(files);
  json checks = json::array();
  for (const auto& c : o.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
  m["checks"] = std::move(checks);
  m["passed"] = o.passed();
  const auto bytes = dump(m);
  std::ofstream os(w.dir() / "manifest.json", std::ios::binary | std::ios::trunc);
  os << bytes;
  if (!os) throw std::runtime_error("cannot write manifest");
}

int execute(Kind kind, const KeyValues& given, bool assert_mode, std::ostream& log) {
  try {
    const Params p(kind, given);
    RunWriter w(p.str("out_dir"));
    const auto o = run(p, w);
    write_manifest(p, w, o);
    for (const auto& c : o.checks) {
      log << (c.pass ? "ok   " : "FAIL ") << c.name << " = " << format_double(c.value)
          << (c.limit == kHuge ? std::string(" (must be finite)") : " (limit " + format_double(c.limit) + ")") << "\n";
      if (std::isnan(c.value)) throw NumericFailure("check " + c.name + " is NaN");
    }
    if (assert_mode && !o.passed()) return kAssertFailure;
    return kOk;
  } catch (const NumericFailure& e) {
    log << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const UsageError& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const fs::filesystem_error& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}

std::string describe(Kind k) {
  static const std::map<Kind, std::string> outputs = {
      {Kind::simulate,
       "  diagnostics.csv: t,M,E,Linf\n"
       "  snap_NNNNNN.bin: field snapshots (\"BOGL\" header, little-endian f64 samples)"},
      {Kind::gauge_check,
       "  gauge_residual.csv: t,residual_L2,mean_term,residual_L2_ablated\n"
       "  reconstruction.csv: t,rel_gap"},
      {Kind::lp_decompose, "  lp_shells.csv: N,mass (N = 0 is the eta(2 xi) low part; mass = squared L2 norm)"},
      {Kind::norm_sweep,
       "  norm_sweep.csv: sample_id,s,b,x_norm,z_norm,y_norm,l4,ratio_z_x,ratio_l4_x038\n"
       "    x_norm = X^{s,b}, z_norm = Z^{s,b}, y_norm = Y^s, l4 = L^4_{x,t},\n"
       "    ratio_z_x = z_norm / x_norm, ratio_l4_x038 = l4 / X^{0,3/8}"},
      {Kind::bilinear_probe,
       "  <which>.csv: sample,lhs,rhs,ratio,region_A,region_B,region_C\n"
       "  <which>.json: name, anchor, sup, mean, stddev, count, skipped, env\n"
       "  which: bilincrit_X, bilincrit_Ztilde, lemma3, lemma2_leibniz, appendix_bilin,\n"
       "         periodic_bilintore, exp_multiplication"},
      {Kind::probe_suite,
       "  <probe>.csv: sample,lhs,rhs,ratio,region_A,region_B,region_C\n"
       "  summary.json: probes (per-probe summaries), anchors, failures"},
      {Kind::lipschitz_pairs,
       "  lipschitz.csv: sample,delta,ratio_u,ratio_w,ratio_F\n"
       "  lipschitz.json: variation (per sample, max/min - 1 of ratio_u over delta), max_variation\n"
       "  truncation.csv: j,data_gap,solution_gap"},
      {Kind::scaling_check, "  scaling.csv: t,rel_gap\n  scaling.json: norm_ratio, expected, norm_rel_error, max_rel_gap"},
      {Kind::flowmap_continuity, "  truncation.csv: j,data_gap,solution_gap"},
  };
  std::string s = "Config keys (defaults):\n";
  for (const auto& [key, v] : defaults(k)) s += "  " + key + " = " + v + "\n";
  s += "Outputs (plus manifest.json):\n" + outputs.at(k) + "\n";
  return s;
}

}  // namespace bogl::experiments
