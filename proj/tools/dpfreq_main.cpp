// Copyright 2026 The dpfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "dpfreq/estimators.hpp"
#include "dpfreq/experiment.hpp"
#include "dpfreq/generators.hpp"
#include "dpfreq/io.hpp"
#include "dpfreq/occurrence.hpp"
#include "dpfreq/stream.hpp"

namespace {

using namespace dpfreq;

struct RunFlags {
  std::string stream_csv;
  std::string sidecar;
  std::string out = "estimates.csv";
  std::string manifest_out;
  std::string query = "cumulative";
  std::string level = "event";
  std::string regime;  // optional cross-check against the sidecar
  std::string composition = "basic";
  std::string noise = "laplace";
  int k = 1;
  int window = 0;
  double epsilon = 1.0;
  double delta = 0.0;
  uint64_t seed = 0;
  int trials = 1;
  bool with_oracle = false;
  bool clamp = false;
  bool no_noise = false;
  bool singleton_wrapper = false;
  int singleton_block = 0;
};

void AddQueryFlags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--query", flags.query, "cumulative | fixed | time");
  cmd->add_option("--k", flags.k, "occurrence threshold");
  cmd->add_option("--window", flags.window, "window length W (fixed only)");
}

void AddRunFlags(CLI::App* cmd, RunFlags& flags) {
  AddQueryFlags(cmd, flags);
  cmd->add_option("--level", flags.level, "event | item");
  cmd->add_option("--regime", flags.regime,
                  "bundle | singleton (checked against the sidecar)");
  cmd->add_option("--epsilon", flags.epsilon, "privacy parameter epsilon");
  cmd->add_option("--delta", flags.delta, "privacy parameter delta");
  cmd->add_option("--composition", flags.composition, "basic | advanced");
  cmd->add_option("--noise", flags.noise, "laplace | gaussian | none");
  cmd->add_flag("--no-noise", flags.no_noise, "alias for --noise none");
  cmd->add_option("--seed", flags.seed, "master RNG seed");
  cmd->add_option("--trials", flags.trials, "must be 1 (use sweep for more)");
  cmd->add_flag("--with-oracle", flags.with_oracle,
                "emit exact values and absolute errors");
  cmd->add_flag("--clamp", flags.clamp,
                "clamp estimates to [0, U] and round at output time");
  cmd->add_flag("--singleton-wrapper", flags.singleton_wrapper,
                "apply the time-compression transform (singleton streams)");
  cmd->add_option("--singleton-block", flags.singleton_block,
                  "block length T' for the wrapper (0 = default)");
}

RunSettings SettingsFromFlags(const RunFlags& flags) {
  RunSettings settings;
  settings.stream_csv = flags.stream_csv;
  settings.sidecar = flags.sidecar;
  settings.with_oracle = flags.with_oracle;
  settings.clamp = flags.clamp;
  EstimatorConfig& config = settings.config;
  config.query = ParseQueryKind(flags.query);
  config.k = flags.k;
  config.window = flags.window;
  config.level = ParseDpLevel(flags.level);
  config.budget = PrivacyBudget{flags.epsilon, flags.delta};
  config.composition = ParseCompositionKind(flags.composition);
  config.noise =
      flags.no_noise ? NoiseKind::kNone : ParseNoiseKind(flags.noise);
  config.seed = flags.seed;
  config.singleton_wrapper = flags.singleton_wrapper;
  config.singleton_block = flags.singleton_block;
  return settings;
}

std::vector<std::pair<int, int>> QueryFamily(QueryKind query, int horizon,
                                             int window) {
  std::vector<std::pair<int, int>> queries;
  switch (query) {
    case QueryKind::kCumulative:
      for (int t = 1; t <= horizon; ++t) queries.emplace_back(1, t);
      break;
    case QueryKind::kFixedWindow:
      if (window < 1 || window > horizon)
        throw std::invalid_argument("fixed-window queries need 1 <= W <= T");
      for (int t1 = 1; t1 + window - 1 <= horizon; ++t1)
        queries.emplace_back(t1, t1 + window - 1);
      break;
    case QueryKind::kTimeWindow:
      for (int t1 = 1; t1 <= horizon; ++t1)
        for (int t2 = t1; t2 <= horizon; ++t2) queries.emplace_back(t1, t2);
      break;
  }
  return queries;
}

int CmdGenerate(const std::string& spec_path, const std::string& csv_path,
                const std::string& sidecar_path) {
  const GeneratorSpec spec = ParseGeneratorSpecJson(ReadFile(spec_path));
  const EventStream stream = Generate(spec);
  WriteStream(stream, csv_path, sidecar_path);
  return 0;
}

int CmdRun(const RunFlags& flags) {
  if (flags.trials != 1)
    throw std::invalid_argument(
        "run emits a single estimate table; use sweep for repeated trials");
  const RunSettings settings = SettingsFromFlags(flags);
  const EventStream stream =
      ReadStream(settings.stream_csv, settings.sidecar);
  if (!flags.regime.empty() && ParseRegime(flags.regime) != stream.regime)
    throw std::invalid_argument("--regime does not match the stream sidecar");
  auto estimator = MakeEstimator(stream, settings.config);
  EstimateTable table = estimator->Table();
  WriteFile(flags.out,
            EstimatesCsv(table, stream, settings.with_oracle, settings.clamp));
  if (!flags.manifest_out.empty())
    WriteFile(flags.manifest_out, ManifestJson(settings, table));
  return 0;
}

int CmdRerun(const std::string& manifest_path, const std::string& out_path) {
  const RunSettings settings = ParseManifest(ReadFile(manifest_path));
  const EventStream stream =
      ReadStream(settings.stream_csv, settings.sidecar);
  auto estimator = MakeEstimator(stream, settings.config);
  EstimateTable table = estimator->Table();
  WriteFile(out_path,
            EstimatesCsv(table, stream, settings.with_oracle, settings.clamp));
  return 0;
}

int CmdOracle(const RunFlags& flags, bool exact_k) {
  const EventStream stream = ReadStream(flags.stream_csv, flags.sidecar);
  const QueryKind query = ParseQueryKind(flags.query);
  EstimateTable table;
  table.kind = query;
  table.k = flags.k;
  table.horizon = stream.horizon;
  table.window = flags.window;
  for (auto [t1, t2] : QueryFamily(query, stream.horizon, flags.window)) {
    const long long exact =
        exact_k ? ExactFreqEqual(stream, flags.k, t1, t2)
                : ExactFreqAtLeast(stream, flags.k, t1, t2);
    table.rows.emplace_back(t1, t2, static_cast<double>(exact));
  }
  WriteFile(flags.out, EstimatesCsv(table, stream, /*with_exact=*/true,
                                    /*clamp=*/false));
  return 0;
}

int CmdSweep(const std::string& spec_path, const std::string& out_path) {
  const SweepSpec spec = ParseSweepSpecJson(ReadFile(spec_path));
  const auto points = Sweep(spec.axis, spec.values, spec.generator,
                            spec.config, spec.trials, spec.max_queries);
  WriteFile(out_path, SweepCsv(spec.axis, points));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private Freq>=k estimates over event streams"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string manifest_path;
  std::string out_path;
  std::string csv_path = "stream.csv";
  std::string sidecar_path = "stream.json";
  bool exact_k = false;
  RunFlags run_flags;
  RunFlags oracle_flags;

  CLI::App* generate =
      app.add_subcommand("generate", "write a stream CSV + JSON sidecar");
  generate->add_option("--spec", spec_path, "generator spec JSON")->required();
  generate->add_option("--out-csv", csv_path, "output stream CSV");
  generate->add_option("--out-sidecar", sidecar_path, "output sidecar JSON");

  CLI::App* run =
      app.add_subcommand("run", "private estimates for one query family");
  run->add_option("--stream", run_flags.stream_csv, "stream CSV")->required();
  run->add_option("--sidecar", run_flags.sidecar, "stream sidecar JSON")
      ->required();
  run->add_option("--out", run_flags.out, "output estimates CSV");
  run->add_option("--manifest", run_flags.manifest_out,
                  "also write a run manifest JSON");
  AddRunFlags(run, run_flags);

  CLI::App* rerun =
      app.add_subcommand("rerun", "reproduce a run from its manifest");
  rerun->add_option("--manifest", manifest_path, "run manifest JSON")
      ->required();
  rerun->add_option("--out", out_path, "output estimates CSV")->required();

  CLI::App* oracle =
      app.add_subcommand("oracle", "exact answers for one query family");
  oracle->add_option("--stream", oracle_flags.stream_csv, "stream CSV")
      ->required();
  oracle->add_option("--sidecar", oracle_flags.sidecar, "stream sidecar JSON")
      ->required();
  oracle->add_option("--out", oracle_flags.out, "output CSV");
  oracle->add_flag("--exact-k", exact_k, "Freq=k instead of Freq>=k");
  AddQueryFlags(oracle, oracle_flags);

  CLI::App* sweep =
      app.add_subcommand("sweep", "error summaries along one axis");
  sweep->add_option("--spec", spec_path, "sweep spec JSON")->required();
  sweep->add_option("--out", out_path, "output summary CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return CmdGenerate(spec_path, csv_path, sidecar_path);
    if (run->parsed()) return CmdRun(run_flags);
    if (rerun->parsed()) return CmdRerun(manifest_path, out_path);
    if (oracle->parsed()) return CmdOracle(oracle_flags, exact_k);
    if (sweep->parsed()) return CmdSweep(spec_path, out_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dpfreq: %s\n", e.what());
    return 1;
  }
  return 1;
}
