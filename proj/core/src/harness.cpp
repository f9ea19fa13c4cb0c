#include "tpqkd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

namespace tpqkd {

void ScenarioConfig::validate() const {
  ProtocolParams probe{variant, n, u, m, countermeasure, base_seed};
  probe.validate();
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
}

ProtocolParams ScenarioConfig::trial_params(int trial_index) const {
  return ProtocolParams{variant, n, u, m, countermeasure,
                        mix_seed(base_seed, static_cast<std::uint64_t>(trial_index))};
}

AggregateStats run_trials(const ScenarioConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  AggregateStats stats;
  stats.trials = config.trials;
  int accepts = 0, key_matches = 0, eve_exact = 0, detections = 0;
  double accuracy_sum = 0.0;

  for (int t = 0; t < config.trials; ++t) {
    std::unique_ptr<Adversary> adversary = make_adversary(config.adversary);
    const SessionResult result = run_session(config.trial_params(t), adversary.get());
    accepts += result.transcript.verdict == Verdict::Accept;
    key_matches += result.transcript.bob_key == result.transcript.key;
    eve_exact += result.report.key_exact_match;
    detections += result.report.detected;
    accuracy_sum += result.report.key_bit_accuracy;
    stats.max_disturbance = std::max(stats.max_disturbance, result.report.disturbance);
  }

  const double trials = static_cast<double>(config.trials);
  stats.accept_rate = accepts / trials;
  stats.key_match_rate = key_matches / trials;
  stats.eve_key_exact_rate = eve_exact / trials;
  stats.mean_eve_bit_accuracy = accuracy_sum / trials;
  stats.detection_rate = detections / trials;
  stats.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

std::string to_string(Variant v) { return v == Variant::Qkdp1 ? "qkdp1" : "qkdp2"; }

std::string to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::None: return "none";
    case AdversaryKind::PassiveListen: return "passive-listen";
    case AdversaryKind::InterceptResend: return "intercept-resend";
    case AdversaryKind::DenseCoding: return "dense-coding";
  }
  return "?";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

namespace {

nlohmann::ordered_json result_to_json(const ScenarioConfig& config, const AggregateStats& stats) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["config"] = {
      {"variant", to_string(config.variant)},
      {"adversary", to_string(config.adversary)},
      {"countermeasure", config.countermeasure},
      {"n", config.n},
      {"u", config.u},
      {"m", config.m},
      {"trials", config.trials},
      {"base_seed", config.base_seed},
      {"format", to_string(config.output_format)},
      {"out", config.output_path},
  };
  j["stats"] = {
      {"trials", stats.trials},
      {"accept_rate", stats.accept_rate},
      {"key_match_rate", stats.key_match_rate},
      {"eve_key_exact_rate", stats.eve_key_exact_rate},
      {"mean_eve_bit_accuracy", stats.mean_eve_bit_accuracy},
      {"detection_rate", stats.detection_rate},
      {"max_disturbance", stats.max_disturbance},
      {"wall_time_seconds", stats.wall_time_seconds},
  };
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string render_json(const std::vector<std::pair<ScenarioConfig, AggregateStats>>& results) {
  if (results.size() == 1) return result_to_json(results[0].first, results[0].second).dump(2) + "\n";
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [config, stats] : results) arr.push_back(result_to_json(config, stats));
  return arr.dump(2) + "\n";
}

std::string csv_header() {
  return "schema_version,variant,adversary,countermeasure,n,u,m,trials,base_seed,"
         "accept_rate,key_match_rate,eve_key_exact_rate,mean_eve_bit_accuracy,"
         "detection_rate,max_disturbance,wall_time_seconds";
}

std::string render_csv(const std::vector<std::pair<ScenarioConfig, AggregateStats>>& results) {
  std::ostringstream out;
  out << csv_header() << "\n";
  for (const auto& [config, stats] : results) {
    out << 1 << ',' << to_string(config.variant) << ',' << to_string(config.adversary) << ','
        << (config.countermeasure ? "true" : "false") << ',' << config.n << ',' << config.u << ','
        << config.m << ',' << config.trials << ',' << config.base_seed << ','
        << format_double(stats.accept_rate) << ',' << format_double(stats.key_match_rate) << ','
        << format_double(stats.eve_key_exact_rate) << ','
        << format_double(stats.mean_eve_bit_accuracy) << ','
        << format_double(stats.detection_rate) << ',' << format_double(stats.max_disturbance)
        << ',' << format_double(stats.wall_time_seconds) << "\n";
  }
  return out.str();
}

void emit(const std::vector<std::pair<ScenarioConfig, AggregateStats>>& results,
          OutputFormat format, const std::string& path) {
  const std::string body = format == OutputFormat::Json ? render_json(results) : render_csv(results);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw std::runtime_error("emit: write to '" + path + "' failed");
}

namespace {

void print_summary(std::ostream& os, const ScenarioConfig& config, const AggregateStats& stats) {
  char line[256];
  std::snprintf(line, sizeof(line),
                "%-6s %-16s cm=%d n=%-4d trials=%-5d accept=%.4f key_match=%.4f eve_exact=%.4f "
                "eve_acc=%.4f detect=%.4f max_dist=%.3g (%.2fs)",
                to_string(config.variant).c_str(), to_string(config.adversary).c_str(),
                config.countermeasure ? 1 : 0, config.n, config.trials, stats.accept_rate,
                stats.key_match_rate, stats.eve_key_exact_rate, stats.mean_eve_bit_accuracy,
                stats.detection_rate, stats.max_disturbance, stats.wall_time_seconds);
  os << line << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Three-party QKD protocol simulator and eavesdropping harness"};

  std::string variant_name = "qkdp1";
  std::string adversary_name = "none";
  std::string format_name = "json";
  std::string scenario;
  std::string out_path;
  bool countermeasure = false;
  bool verbose = false;
  int n = 64;
  int u = -1;  // derived from n and m unless given
  int m = 16;
  int trials = 100;
  std::uint64_t seed = 42;

  app.add_option("--variant", variant_name, "Protocol variant: qkdp1 | qkdp2")
      ->check(CLI::IsMember({"qkdp1", "qkdp2"}));
  app.add_option("--adversary", adversary_name,
                 "none | passive-listen | intercept-resend | dense-coding")
      ->check(CLI::IsMember({"none", "passive-listen", "intercept-resend", "dense-coding"}));
  app.add_flag("--countermeasure", countermeasure, "Alice shuffles before encoding");
  app.add_option("--n", n, "Qubits per session");
  app.add_option("--u", u, "Key bits (default n - m)");
  app.add_option("--m", m, "Checksum bits");
  app.add_option("--trials", trials, "Monte Carlo trials");
  app.add_option("--seed", seed, "Base seed; trial t uses mix_seed(seed, t)");
  app.add_option("--format", format_name, "Output format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write machine-readable results to this path");
  app.add_option("--scenario", scenario,
                 "'all' runs the four canonical scenarios: honest, attack on qkdp1, attack on "
                 "qkdp2, countermeasure");
  app.add_flag("--verbose", verbose, "Echo the configuration before running");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    ScenarioConfig base;
    base.variant = variant_name == "qkdp1" ? Variant::Qkdp1 : Variant::Qkdp2;
    if (adversary_name == "none") base.adversary = AdversaryKind::None;
    else if (adversary_name == "passive-listen") base.adversary = AdversaryKind::PassiveListen;
    else if (adversary_name == "intercept-resend") base.adversary = AdversaryKind::InterceptResend;
    else base.adversary = AdversaryKind::DenseCoding;
    base.countermeasure = countermeasure;
    base.n = n;
    base.u = u >= 0 ? u : n - m;
    base.m = m;
    base.trials = trials;
    base.base_seed = seed;
    base.output_format = format_name == "json" ? OutputFormat::Json : OutputFormat::Csv;
    base.output_path = out_path;

    std::vector<ScenarioConfig> configs;
    if (scenario.empty()) {
      configs.push_back(base);
    } else if (scenario == "all") {
      ScenarioConfig honest = base;
      honest.variant = Variant::Qkdp1;
      honest.adversary = AdversaryKind::None;
      honest.countermeasure = false;
      ScenarioConfig attack1 = honest;
      attack1.adversary = AdversaryKind::DenseCoding;
      ScenarioConfig attack2 = attack1;
      attack2.variant = Variant::Qkdp2;
      ScenarioConfig defended = attack2;
      defended.countermeasure = true;
      configs = {honest, attack1, attack2, defended};
    } else {
      throw std::invalid_argument("--scenario only supports 'all'");
    }

    for (const ScenarioConfig& config : configs) config.validate();

    std::vector<std::pair<ScenarioConfig, AggregateStats>> results;
    for (const ScenarioConfig& config : configs) {
      if (verbose) {
        std::cout << "running " << to_string(config.variant) << " / "
                  << to_string(config.adversary) << (config.countermeasure ? " +countermeasure" : "")
                  << " n=" << config.n << " u=" << config.u << " m=" << config.m
                  << " trials=" << config.trials << " seed=" << config.base_seed << "\n";
      }
      results.emplace_back(config, run_trials(config));
      print_summary(std::cout, results.back().first, results.back().second);
    }

    if (!out_path.empty()) {
      emit(results, base.output_format, out_path);
      std::cout << "wrote " << to_string(base.output_format) << " results to " << out_path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tpqkd
