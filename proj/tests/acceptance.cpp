// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--cli <path to bogl>] [--only <k>]
//
// With --cli, criterion 12 drives the command-line tool; otherwise it calls
// the experiment driver in-process.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bogl/bilinear.hpp"
#include "bogl/calculus.hpp"
#include "bogl/dynamics.hpp"
#include "bogl/experiments.hpp"
#include "bogl/gauge.hpp"
#include "bogl/linear_probes.hpp"
#include "bogl/littlewood_paley.hpp"
#include "bogl/random_fields.hpp"
#include "bogl/spacetime.hpp"
#include "json.hpp"

using namespace bogl;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 2024;

struct Result {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RealField random_data(const SpatialGrid& g, std::uint64_t id, std::uint64_t i, long kmax, double decay,
                      bool mean_zero, double amplitude = 1.0) {
  rng::Stream st(kSeed, id, i);
  Spectrum sp;
  sp.decay = decay;
  sp.kmax = kmax;
  sp.mean_zero = mean_zero;
  auto u = random_real(g, st, sp);
  u *= amplitude / lebesgue_norm(u, kLinf);
  return u;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

fs::path run_dir(const std::string& name) {
  auto p = fs::current_path() / "acceptance_runs" / name;
  fs::remove_all(p);
  return p;
}

// ---------------------------------------------------------------- 1

Result spectral_identities() {
  double worst = 0.0;
  auto track = [&](double v) { worst = std::max(worst, v); };
  for (std::size_t n : {64u, 256u, 1024u}) {
    const auto g = make_grid(n);
    const auto u = random_data(g, 1, n, -1, 0.0, false);
    const auto s = u.real_samples();
    track(relative_gap(RealField::from_samples(g, s), u));

    double direct = 0.0, spectral = 0.0;
    for (double v : s) direct += v * v * g.dx();
    for (const auto& c : u.coeffs()) spectral += std::norm(c) * g.length();
    track(std::abs(direct - spectral) / spectral);

    auto c0 = u.coeffs();
    c0[0] = 0.0;
    const RealField uz(g, c0);
    track(relative_gap(hilbert(hilbert(uz)), -1.0 * uz));
    const auto cz = to_complex(uz);
    track(relative_gap(scale(project(cz, {Proj::plus}), cplx(0, -1)) + scale(project(cz, {Proj::minus}), cplx(0, 1)),
                       to_complex(hilbert(uz))));

    rng::Stream st(kSeed, 2, n);
    Spectrum sp;
    sp.decay = 0.0;
    const auto v = random_complex(g, st, sp);
    const auto pp = project(v, {Proj::plus}), pm = project(v, {Proj::minus}), p0 = project(v, {Proj::mean});
    track(relative_gap(pp + pm + p0, v));
    track(relative_gap(project(pp, {Proj::plus}), pp));
    track(relative_gap(project(pm, {Proj::minus}), pm));
    track(lebesgue_norm(project(pp, {Proj::minus}), 2) / lebesgue_norm(v, 2));
    track(lebesgue_norm(project(pm, {Proj::plus}), 2) / lebesgue_norm(v, 2));
    track(relative_gap(project(v, {Proj::hi}) + project(v, {Proj::lo}), v));
  }
  return {worst <= 1e-12, "worst relative error " + sci(worst) + " <= 1e-12 at N = 64, 256, 1024"};
}

// ---------------------------------------------------------------- 2

Result partition_of_unity() {
  double pou = 0.0, rec = 0.0;
  for (double lambda : {1.0, 4.0}) {
    const auto g = make_grid(1024, lambda);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double xi = g.xi(k);
      if (xi == 0.0) continue;
      double sum = lp::eta(2 * xi);
      for (double N = 1; N <= 4096; N *= 2) sum += lp::phi_N(xi, N);
      pou = std::max(pou, std::abs(sum - 1.0));
    }
  }
  for (std::size_t n : {64u, 256u, 1024u}) {
    const auto u = random_data(make_grid(n), 4, n, -1, 0.5, false);
    rec = std::max(rec, relative_gap(lp::decompose(u).sum(), u));
  }
  return {pou <= 1e-12 && rec <= 1e-12,
          "unity defect " + sci(pou) + ", reconstruction " + sci(rec) + " (both <= 1e-12)"};
}

// ---------------------------------------------------------------- 3

Result conservation() {
  const auto g = make_grid(256);
  double m_drift = 0.0, e_drift = 0.0, min_gain = 1e300;
  for (std::uint64_t i = 0; i < 3; ++i) {
    const auto u0 = random_data(g, 3, i, 8, 2.0, false);
    double e[2];
    for (int h = 0; h < 2; ++h) {
      const auto tr = simulate(u0, {g, h ? 5e-4 : 1e-3, 1.0, 2.0 / 3.0, 10, 0});
      const auto& d0 = tr.diagnostics.front();
      double md = 0.0, ed = 0.0;
      for (const auto& d : tr.diagnostics) {
        md = std::max(md, std::abs(d.momentum - d0.momentum) / d0.momentum);
        ed = std::max(ed, std::abs(d.energy - d0.energy) / std::abs(d0.energy));
      }
      e[h] = ed;
      if (h == 0) m_drift = std::max(m_drift, md), e_drift = std::max(e_drift, ed);
    }
    min_gain = std::min(min_gain, e[0] / e[1]);
  }
  return {m_drift <= 1e-10 && e_drift <= 1e-8 && min_gain >= 8.0,
          "M drift " + sci(m_drift) + " <= 1e-10, E drift " + sci(e_drift) + " <= 1e-8, dt/2 gain " + sci(min_gain) +
              " >= 8 (3 samples)"};
}

// ---------------------------------------------------------------- 4

double rms_at(const std::vector<gauge::ResidualRow>& rows, double every) {
  double s = 0.0;
  int n = 0;
  for (const auto& r : rows) {
    const double q = r.t / every;
    if (std::abs(q - std::round(q)) < 1e-6) s += r.residual * r.residual, ++n;
  }
  return std::sqrt(s / n);
}

Result gauge_evolution() {
  const auto g = make_grid(256);
  double lo = 1e300, hi = 0.0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto u0 = random_data(g, 5, i, 8, 2.0, true);
    std::vector<double> r;
    for (std::size_t stride : {20u, 10u, 5u})
      r.push_back(rms_at(gauge::gauge_residual(simulate(u0, {g, 1e-3, 0.2, 2.0 / 3.0, stride, 0})), 0.02));
    for (std::size_t k = 0; k + 1 < r.size(); ++k) lo = std::min(lo, r[k] / r[k + 1]), hi = std::max(hi, r[k] / r[k + 1]);
  }
  int increased = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto tr = simulate(random_data(g, 6, i, 8, 2.0, true), {g, 1e-3, 0.2, 2.0 / 3.0, 2, 0});
    const auto with = gauge::gauge_residual(tr), without = gauge::gauge_residual(tr, {}, false);
    double a = 0.0, b = 0.0;
    for (std::size_t k = 0; k < with.size(); ++k) a += with[k].residual * with[k].residual, b += without[k].residual * without[k].residual;
    increased += b > a;
  }
  return {lo >= 3.5 && hi <= 4.5 && increased >= 48,
          "halving ratios in [" + sci(lo) + ", " + sci(hi) + "] within [3.5, 4.5]; ablation raises residual on " +
              std::to_string(increased) + "/50 (need >= 48)"};
}

// ---------------------------------------------------------------- 5

Result gauge_inversion() {
  const auto g = make_grid(256);
  gauge::Options o;
  o.oversample = 4;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i)
    worst = std::max(worst, gauge::reconstruct_high(random_data(g, 7, i, 16, 1.0, true), o).rel_gap);
  return {worst <= 1e-10, "worst relative gap " + sci(worst) + " <= 1e-10 over 50 samples, 4x oversampling"};
}

// ---------------------------------------------------------------- 6

Result resonance_scan() {
  using namespace bilinear;
  long in_d = 0, defects = 0, gaps = 0, overlaps = 0, pairs = 0;
  for (long xi = -16; xi < 16; ++xi)
    for (long xi1 = -16; xi1 < 16; ++xi1)
      for (long tau = -16; tau < 16; ++tau)
        for (long tau1 = -16; tau1 < 16; ++tau1) {
          const FrequencyTuple t{xi, xi1, tau, tau1};
          if (!in_domain(t)) continue;
          ++in_d;
          // sigma1 + sigma2 - sigma = -2 xi xi2, in integers.
          defects += t.sigma1() + t.sigma2() - t.sigma() != -2 * xi * t.xi2();
          const long x2 = std::abs(t.xi2());
          if (x2 == 0) continue;
          for (long N = 1; N <= 64; N *= 2)
            for (long N2 = 1; N2 <= 64; N2 *= 2) {
              if (2 * xi < N || xi > 2 * N || 2 * x2 < N2 || x2 > 2 * N2) continue;
              ++pairs;
              const auto p = region_predicates(t, N, N2);
              const int hits = p[0] + p[1] + p[2];
              gaps += hits == 0 || classify(t, N, N2) == Region::none;
              overlaps += hits > 1;
            }
        }
  return {in_d > 0 && defects == 0 && gaps == 0 && overlaps == 0,
          std::to_string(in_d) + " tuples in D, " + std::to_string(pairs) + " shell pairs: " + std::to_string(defects) +
              " identity defects, " + std::to_string(gaps) + " gaps, " + std::to_string(overlaps) + " overlaps"};
}

// ---------------------------------------------------------------- 7

Result oracle_equivalence() {
  using namespace bilinear;
  const auto g = make_spacetime_grid(make_grid(16), 16, 2 * kPi);
  auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  double fast = 0.0, dual = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    rng::Stream st(kSeed, 8, i);
    SpaceTimeSpectrum sp;
    sp.decay_xi = 0.5;
    sp.decay_sigma = 0.25;
    sp.real = false;
    const auto h = random_spacetime(g, st, sp);
    sp.positive_only = true;
    const auto w = random_spacetime(g, st, sp);
    sp.positive_only = false;
    sp.real = true;
    const auto u = random_spacetime(g, st, sp);
    fast = std::max(fast, rel(trilinear_I(h, w, u), trilinear_I_oracle(h, w, u)));
    const auto hw = weight(h, [](double xi, double tau) {
      return cplx(std::sqrt(1.0 + std::abs(tau + std::abs(xi) * xi)) * (1.0 - lp::eta(xi)));
    });
    dual = std::max(dual, rel(pairing(h, bilinear_B(w, u)), cplx(0.0, 1.0) * trilinear_I_oracle(hw, w, u)));
  }
  return {fast <= 1e-10 && dual <= 1e-10,
          "fast vs oracle " + sci(fast) + ", duality " + sci(dual) + " (both <= 1e-10, 50 triples on 16x16)"};
}

// ---------------------------------------------------------------- 8

struct Stability {
  std::string name;
  double sup100 = 0.0, sup200 = 0.0, region_gap = 0.0;
  double change() const { return std::abs(sup200 - sup100) / sup100; }
  bool finite() const { return std::isfinite(sup100) && std::isfinite(sup200) && sup100 > 0.0; }
};

double region_gap(const ProbeReport& r, const std::vector<double>& pairings) {
  if (r.rows.size() != pairings.size()) return 1e300;
  double worst = 0.0;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    const double sum = row.region_A.value_or(NAN) + row.region_B.value_or(NAN) + row.region_C.value_or(NAN);
    worst = std::max(worst, std::abs(sum - pairings[i]) / std::abs(pairings[i]));
  }
  return std::isfinite(worst) ? worst : 1e300;
}

Result estimate_probes() {
  using namespace bilinear;
  std::vector<Stability> out;
  auto record = [&](std::string name, const std::function<ProbeReport(std::size_t, std::vector<double>*)>& run,
                    bool regions) {
    Stability s{std::move(name)};
    std::vector<double> p100, p200;
    const auto a = run(100, &p100), b = run(200, &p200);
    s.sup100 = a.skipped < 100 ? a.summary().sup : NAN;
    s.sup200 = b.skipped < 200 ? b.summary().sup : NAN;
    if (regions) s.region_gap = std::max(region_gap(a, p100), region_gap(b, p200));
    out.push_back(s);
  };
  for (double sv : {0.0, 0.25}) {
    const std::string tag = sv == 0.0 ? " s=0" : " s=1/4";
    auto cfg = [sv](std::size_t n) {
      BilinearProbeConfig c;
      c.s = sv;
      c.samples = n;
      c.seed = kSeed;
      return c;
    };
    for (auto e : kAllEstimates) {
      if (e == Estimate::appendix_bilin && sv == 0.0) continue;      // needs s > 0
      if (e == Estimate::periodic_bilintore && sv < 0.25) continue;  // needs s >= 1/4
      const bool regions = e == Estimate::bilincrit_X || e == Estimate::bilincrit_Ztilde;
      record(std::string(estimate_name(e)) + tag,
             [&](std::size_t n, std::vector<double>* p) { return estimate_probe(e, cfg(n), p); }, regions);
    }
    record("exp_multiplication" + tag,
           [&](std::size_t n, std::vector<double>*) { return exp_multiplication_probe(cfg(n)); }, false);
  }
  record(
      "strichartz_L4",
      [](std::size_t n, std::vector<double>*) {
        LinearProbeConfig c;
        c.samples = n;
        c.seed = kSeed;
        return strichartz_probe(c);
      },
      false);
  for (auto [am, ap] : {std::pair{1.0, 1.0}, {0.4, 0.5}, {0.3, 0.35}})
    record("calculus_lemma a=(" + sci(am) + "," + sci(ap) + ")",
           [am, ap](std::size_t n, std::vector<double>*) {
             return calculus::calculus_lemma_check(am, ap, {1e4, n / 2 - 1});
           },
           false);

  bool pass = true;
  double worst_change = 0.0, worst_gap = 0.0;
  std::string worst_name;
  for (const auto& s : out) {
    pass = pass && s.finite() && s.change() <= 0.2 && s.region_gap <= 1e-10;
    if (!s.finite() || s.change() >= worst_change) worst_change = s.finite() ? s.change() : INFINITY, worst_name = s.name;
    worst_gap = std::max(worst_gap, s.region_gap);
  }
  return {pass, std::to_string(out.size()) + " probes finite; worst sup change 100->200 " + sci(worst_change) + " (" +
                    worst_name + ") <= 0.2; region sum gap " + sci(worst_gap) + " <= 1e-10"};
}

// ---------------------------------------------------------------- 9

Result calculus_closed_form() {
  const double err = std::abs(calculus::integral(1.0, 1.0, 0.0) - 2.0 / 3.0);
  return {err <= 1e-10, "|I - 2/3| = " + sci(err) + " <= 1e-10"};
}

// ---------------------------------------------------------------- 10

Result lipschitz() {
  const auto dir = run_dir("lipschitz");
  std::ostringstream log;
  const int code = experiments::execute(experiments::Kind::lipschitz_pairs,
                                        {{"n", "256"}, {"t_end", "0.5"}, {"deltas", "0.1,0.01,0.001"},
                                         {"seed", std::to_string(kSeed)}, {"out_dir", dir.string()}},
                                        false, log);
  if (code != 0) return {false, "lipschitz-pairs exited with " + std::to_string(code) + ": " + log.str()};
  const auto j = nlohmann::json::parse(slurp(dir / "lipschitz.json"));
  const double v = j["max_variation"];
  return {v <= 0.1, "max variation of sup_t ratio across delta = " + sci(v) + " <= 0.1 (" +
                        std::to_string(j["variation"].size()) + " pairs, N = 256, t <= 0.5)"};
}

// ---------------------------------------------------------------- 11

Result scaling() {
  const auto dir = run_dir("scaling");
  std::ostringstream log;
  const int code = experiments::execute(
      experiments::Kind::scaling_check,
      {{"n", "256"}, {"dt", "1e-3"}, {"t", "0.25"}, {"seed", std::to_string(kSeed)}, {"out_dir", dir.string()}}, false,
      log);
  if (code != 0) return {false, "scaling-check exited with " + std::to_string(code) + ": " + log.str()};
  const auto j = nlohmann::json::parse(slurp(dir / "scaling.json"));
  const double norm = j["norm_rel_error"], gap = j["max_rel_gap"];
  return {norm <= 1e-12 && gap <= 1e-6,
          "L2 relation error " + sci(norm) + " <= 1e-12, rescaled-run gap " + sci(gap) + " <= 1e-6"};
}

// ---------------------------------------------------------------- 12

Result determinism(const std::string& cli) {
  const auto a = run_dir("suite_a"), b = run_dir("suite_b");
  for (const auto& d : {a, b}) {
    int code;
    if (!cli.empty()) {
      const std::string cmd = "\"" + cli + "\" probe-suite --seed 12 --set samples=10 --out \"" + d.string() + "\" 2>/dev/null";
      code = std::system(cmd.c_str());
    } else {
      std::ostringstream log;
      code = experiments::execute(experiments::Kind::probe_suite,
                                  {{"seed", "12"}, {"samples", "10"}, {"out_dir", d.string()}}, false, log);
    }
    if (code != 0) return {false, "probe-suite failed with status " + std::to_string(code)};
  }
  std::size_t files = 0, differing = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const auto name = e.path().filename();
    if (name == "manifest.json") continue;  // echoes out_dir
    ++files;
    differing += !fs::exists(b / name) || slurp(e.path()) != slurp(b / name);
  }
  const auto ma = nlohmann::json::parse(slurp(a / "manifest.json")), mb = nlohmann::json::parse(slurp(b / "manifest.json"));
  const bool hashes = ma["files"] == mb["files"];
  return {files > 0 && differing == 0 && hashes,
          std::to_string(files) + " CSV/JSON files, " + std::to_string(differing) + " differ; manifest hashes " +
              (hashes ? "equal" : "differ") + (cli.empty() ? " (in-process)" : " (CLI)")};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string a = argv[i];
    if (a == "--cli") cli = argv[i + 1];
    else if (a == "--only") only = std::atoi(argv[i + 1]);
  }
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"spectral identities", spectral_identities},
      {"partition of unity", partition_of_unity},
      {"conservation", conservation},
      {"gauge evolution", gauge_evolution},
      {"gauge inversion", gauge_inversion},
      {"resonance identity", resonance_scan},
      {"oracle equivalence", oracle_equivalence},
      {"estimate probes", estimate_probes},
      {"calculus closed form", calculus_closed_form},
      {"Lipschitz experiment", lipschitz},
      {"scaling", scaling},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only && static_cast<int>(k + 1) != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[k].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu %s  %-22s %s [%.1fs]\n", k + 1, r.pass ? "PASS" : "FAIL", criteria[k].first,
                r.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !r.pass;
  }
  return failed == 0 ? 0 : 1;
}
