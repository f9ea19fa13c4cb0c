#pragma once

// Experiment runner: seeded Monte Carlo trials over one scenario, aggregate
// statistics, and machine-readable output. Trial t runs with seed
// mix_seed(base_seed, t) (see rng.hpp), so the whole aggregate is a pure
// function of the configuration apart from wall_time.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tpqkd/adversary.hpp"
#include "tpqkd/session.hpp"

namespace tpqkd {

enum class OutputFormat { Json, Csv };

struct ScenarioConfig {
  Variant variant = Variant::Qkdp1;
  AdversaryKind adversary = AdversaryKind::None;
  bool countermeasure = false;
  int n = 64;
  int u = 48;
  int m = 16;
  int trials = 100;
  std::uint64_t base_seed = 42;
  OutputFormat output_format = OutputFormat::Json;
  std::string output_path;  // empty: no file written

  void validate() const;  // throws std::invalid_argument
  ProtocolParams trial_params(int trial_index) const;
};

struct AggregateStats {
  int trials = 0;
  double accept_rate = 0.0;
  double key_match_rate = 0.0;       // Bob's recovered key vs Alice's
  double eve_key_exact_rate = 0.0;
  double mean_eve_bit_accuracy = 0.0;
  double detection_rate = 0.0;       // Reject == detected
  double max_disturbance = 0.0;
  double wall_time_seconds = 0.0;
};

AggregateStats run_trials(const ScenarioConfig& config);

// Human-oriented names used in CLI flags and output files.
std::string to_string(Variant v);
std::string to_string(AdversaryKind k);
std::string to_string(OutputFormat f);

// Machine-readable rendering. JSON is one object (or an array when several
// scenarios are emitted together); CSV is one fixed-order header plus one
// row per scenario. schema_version is 1.
std::string render_json(const std::vector<std::pair<ScenarioConfig, AggregateStats>>& results);
std::string render_csv(const std::vector<std::pair<ScenarioConfig, AggregateStats>>& results);
std::string csv_header();

// Writes the rendering of `results` to `path` in `format`; errors carry the
// path in their message.
void emit(const std::vector<std::pair<ScenarioConfig, AggregateStats>>& results,
          OutputFormat format, const std::string& path);

// Full command-line front end; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace tpqkd
