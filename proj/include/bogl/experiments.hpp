#pragma once

// Experiment drivers behind the bogl command line.
//
// Config files are UTF-8 `key = value` lines; `#` starts a comment. Every
// kind declares its keys with defaults and rejects unknown ones. A run writes
// its outputs and a manifest.json (kind, resolved config, every output file
// with its FNV-1a 64 content hash, and the run's checks) into one directory.
// All outputs are a pure function of the resolved config.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace bogl::experiments {

using KeyValues = std::map<std::string, std::string>;

// ConfigError on lines without '=', empty keys or repeated keys.
KeyValues parse_config(std::istream& is);
KeyValues load_config(const std::filesystem::path& p);

enum class Kind {
  simulate,
  gauge_check,
  lp_decompose,
  norm_sweep,
  bilinear_probe,
  probe_suite,
  lipschitz_pairs,
  scaling_check,
  flowmap_continuity,
};
// Command names use dashes: "gauge-check", "probe-suite", ...
const char* kind_name(Kind k);
Kind parse_kind(std::string_view name);  // ConfigError
const std::vector<Kind>& all_kinds();
// Keys accepted by a kind with their default values.
const KeyValues& defaults(Kind k);

class Params {
 public:
  // Fills defaults; ConfigError for keys the kind does not know.
  Params(Kind kind, const KeyValues& given);

  Kind kind() const { return kind_; }
  const KeyValues& resolved() const { return values_; }

  std::string str(const std::string& key) const;
  // Accepts decimals and fractions such as "2/3".
  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  std::uint64_t u64(const std::string& key) const;
  bool flag(const std::string& key) const;
  // Comma-separated lists; empty value gives an empty list.
  std::vector<double> reals(const std::string& key) const;
  std::vector<long> integers(const std::string& key) const;
  std::vector<std::string> words(const std::string& key) const;

 private:
  Kind kind_;
  KeyValues values_;
};

std::uint64_t fnv1a64(std::string_view bytes);

// The single writer of a run directory. write() is safe to call from
// several threads; each call replaces the whole file.
class RunWriter {
 public:
  explicit RunWriter(std::filesystem::path dir);

  void write(const std::string& name, const std::string& bytes);

  struct Entry {
    std::string name;
    std::size_t bytes = 0;
    std::uint64_t hash = 0;
  };
  std::vector<Entry> entries() const;  // sorted by name
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::map<std::string, Entry> entries_;
};

// pass = value is finite and value <= limit.
struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};
Check at_most(std::string name, double value, double limit);

struct Outcome {
  std::vector<Check> checks;
  bool passed() const;
};

// Runs the experiment and writes its outputs (not the manifest).
Outcome run(const Params& p, RunWriter& w);
void write_manifest(const Params& p, RunWriter& w, const Outcome& o);

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericFailure = 3, kAssertFailure = 4 };

// Parameter resolution, run, manifest and exit-code mapping. Errors and
// failed checks are reported on `log`.
int execute(Kind kind, const KeyValues& given, bool assert_mode, std::ostream& log);

// Per-kind description of keys and output files, for --help.
std::string describe(Kind k);

}  // namespace bogl::experiments
