// bogl <subcommand> --config <file> [--assert] [--seed <k>] [--out <dir>]

#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "bogl/errors.hpp"
#include "bogl/experiments.hpp"

namespace ex = bogl::experiments;

namespace {

struct Common {
  std::string config;
  bool assert_mode = false;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;  // subcommand-specific keys
};

const std::map<ex::Kind, std::string> kSummary = {
    {ex::Kind::simulate, "Integrate the periodic equation and write diagnostics and snapshots"},
    {ex::Kind::gauge_check, "Gauge residual and inversion gap along a saved trajectory"},
    {ex::Kind::lp_decompose, "Littlewood-Paley shell masses of a snapshot or random field"},
    {ex::Kind::norm_sweep, "X, Z, Y and L^4 norms over random space-time fields"},
    {ex::Kind::bilinear_probe, "One bilinear estimate probe over a random ensemble"},
    {ex::Kind::probe_suite, "All estimate probes with a summary"},
    {ex::Kind::lipschitz_pairs, "Flow-map difference quotients and a truncation sweep"},
    {ex::Kind::scaling_check, "Rescaled runs on two tori compared at matching times"},
    {ex::Kind::flowmap_continuity, "Solution gap against frequency truncation of the data"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benjamin-Ono gauge lab: simulations, gauge diagnostics and norm probes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::map<ex::Kind, Common> opts;
  std::map<ex::Kind, CLI::App*> subs;
  for (auto kind : ex::all_kinds()) {
    auto& o = opts[kind];
    auto* sub = app.add_subcommand(ex::kind_name(kind), kSummary.at(kind));
    sub->footer("\n" + ex::describe(kind) +
                "\nExit codes: 0 success, 2 config error, 3 numeric failure, 4 --assert check failed.");
    sub->add_option("--config", o.config, "key = value config file (# starts a comment)");
    sub->add_flag("--assert", o.assert_mode, "Exit with code 4 when a check exceeds its limit");
    sub->add_option("--seed", o.seed, "Seed (overrides the config)");
    sub->add_option("--out", o.out, "Run directory (overrides out_dir)");
    sub->add_option("--set", o.sets, "Extra key=value overrides, applied after the config file");
    subs[kind] = sub;
  }
  auto add_key = [&](ex::Kind kind, const std::string& flag, const std::string& key, const std::string& help) {
    subs[kind]->add_option_function<std::string>(
        flag, [&opts, kind, key](const std::string& v) { opts[kind].flags[key] = v; }, help);
  };
  add_key(ex::Kind::gauge_check, "--traj", "traj", "Directory of snapshot files from `simulate`");
  add_key(ex::Kind::lp_decompose, "--snapshot", "snapshot", "Snapshot file to decompose");
  add_key(ex::Kind::bilinear_probe, "--which", "which", "Estimate name");
  add_key(ex::Kind::bilinear_probe, "--s", "s", "Regularity s");
  add_key(ex::Kind::bilinear_probe, "--samples", "samples", "Ensemble size");
  add_key(ex::Kind::probe_suite, "--probes", "probes", "Comma-separated probe names, or all");
  add_key(ex::Kind::probe_suite, "--samples", "samples", "Ensemble size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ex::kConfigError;
  }

  for (auto kind : ex::all_kinds()) {
    if (!subs[kind]->parsed()) continue;
    const auto& o = opts[kind];
    ex::KeyValues kv;
    try {
      if (!o.config.empty()) kv = ex::load_config(o.config);
      for (const auto& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw bogl::ConfigError("--set expects key=value, got '" + s + "'");
        kv[s.substr(0, eq)] = s.substr(eq + 1);
      }
    } catch (const bogl::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return ex::kConfigError;
    }
    for (const auto& [k, v] : o.flags) kv[k] = v;
    if (o.seed) kv["seed"] = std::to_string(*o.seed);
    if (!o.out.empty()) kv["out_dir"] = o.out;
    return ex::execute(kind, kv, o.assert_mode, std::cerr);
  }
  return ex::kConfigError;
}
