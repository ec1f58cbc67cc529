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

#include "dpfreq/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dpfreq/occurrence.hpp"
#include "json.hpp"

namespace dpfreq {
namespace {

using nlohmann::json;

[[noreturn]] void BadName(const std::string& what, const std::string& name) {
  throw std::invalid_argument("unknown " + what + ": '" + name + "'");
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

long long ParseInt(const std::string& text, const char* what) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument(std::string("bad ") + what + ": '" + text +
                                "'");
  return value;
}

json BudgetJson(const PrivacyBudget& budget) {
  return json{{"epsilon", budget.epsilon}, {"delta", budget.delta}};
}

PrivacyBudget BudgetFromJson(const json& j) {
  return PrivacyBudget{j.at("epsilon").get<double>(),
                       j.at("delta").get<double>()};
}

json ConfigJson(const EstimatorConfig& config) {
  return json{{"query", QueryKindName(config.query)},
              {"k", config.k},
              {"window", config.window},
              {"level", DpLevelName(config.level)},
              {"budget", BudgetJson(config.budget)},
              {"composition", CompositionKindName(config.composition)},
              {"noise", NoiseKindName(config.noise)},
              {"seed", config.seed},
              {"singleton_wrapper", config.singleton_wrapper},
              {"singleton_block", config.singleton_block}};
}

EstimatorConfig ConfigFromJson(const json& j) {
  EstimatorConfig config;
  config.query = ParseQueryKind(j.at("query").get<std::string>());
  config.k = j.at("k").get<int>();
  config.window = j.at("window").get<int>();
  config.level = ParseDpLevel(j.at("level").get<std::string>());
  config.budget = BudgetFromJson(j.at("budget"));
  config.composition =
      ParseCompositionKind(j.at("composition").get<std::string>());
  config.noise = ParseNoiseKind(j.at("noise").get<std::string>());
  config.seed = j.at("seed").get<uint64_t>();
  config.singleton_wrapper = j.at("singleton_wrapper").get<bool>();
  config.singleton_block = j.at("singleton_block").get<int>();
  return config;
}

}  // namespace

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buffer, ptr);
}

std::string RegimeName(Regime regime) {
  return regime == Regime::kBundle ? "bundle" : "singleton";
}

Regime ParseRegime(const std::string& name) {
  if (name == "bundle") return Regime::kBundle;
  if (name == "singleton") return Regime::kSingleton;
  BadName("regime", name);
}

std::string QueryKindName(QueryKind kind) {
  switch (kind) {
    case QueryKind::kCumulative: return "cumulative";
    case QueryKind::kFixedWindow: return "fixed";
    case QueryKind::kTimeWindow: return "time";
  }
  return "?";
}

QueryKind ParseQueryKind(const std::string& name) {
  if (name == "cumulative") return QueryKind::kCumulative;
  if (name == "fixed") return QueryKind::kFixedWindow;
  if (name == "time") return QueryKind::kTimeWindow;
  BadName("query kind", name);
}

std::string NoiseKindName(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kNone: return "none";
    case NoiseKind::kLaplace: return "laplace";
    case NoiseKind::kGaussian: return "gaussian";
  }
  return "?";
}

NoiseKind ParseNoiseKind(const std::string& name) {
  if (name == "none") return NoiseKind::kNone;
  if (name == "laplace") return NoiseKind::kLaplace;
  if (name == "gaussian") return NoiseKind::kGaussian;
  BadName("noise kind", name);
}

std::string DpLevelName(DpLevel level) {
  return level == DpLevel::kEvent ? "event" : "item";
}

DpLevel ParseDpLevel(const std::string& name) {
  if (name == "event") return DpLevel::kEvent;
  if (name == "item") return DpLevel::kItem;
  BadName("privacy level", name);
}

std::string CompositionKindName(CompositionKind kind) {
  return kind == CompositionKind::kBasic ? "basic" : "advanced";
}

CompositionKind ParseCompositionKind(const std::string& name) {
  if (name == "basic") return CompositionKind::kBasic;
  if (name == "advanced") return CompositionKind::kAdvanced;
  BadName("composition", name);
}

std::string GeneratorKindName(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kUniform: return "uniform";
    case GeneratorKind::kZipf: return "zipf";
    case GeneratorKind::kBursty: return "bursty";
    case GeneratorKind::kHardRange: return "hard_range";
    case GeneratorKind::kHardMarginal: return "hard_marginal";
  }
  return "?";
}

GeneratorKind ParseGeneratorKind(const std::string& name) {
  if (name == "uniform") return GeneratorKind::kUniform;
  if (name == "zipf") return GeneratorKind::kZipf;
  if (name == "bursty") return GeneratorKind::kBursty;
  if (name == "hard_range") return GeneratorKind::kHardRange;
  if (name == "hard_marginal") return GeneratorKind::kHardMarginal;
  BadName("generator kind", name);
}

std::string StreamCsv(const EventStream& stream) {
  std::string out = "t,item,count\n";
  for (const auto& [t, items] : stream.entries)
    for (const auto& [item, count] : items)
      out += std::to_string(t) + "," + std::to_string(item) + "," +
             std::to_string(count) + "\n";
  return out;
}

std::string StreamSidecarJson(const EventStream& stream) {
  json j{{"T", stream.horizon},
         {"U", stream.universe},
         {"regime", RegimeName(stream.regime)}};
  return j.dump(2) + "\n";
}

void WriteStream(const EventStream& stream, const std::string& csv_path,
                 const std::string& sidecar_path) {
  WriteFile(csv_path, StreamCsv(stream));
  WriteFile(sidecar_path, StreamSidecarJson(stream));
}

EventStream ReadStream(const std::string& csv_path,
                       const std::string& sidecar_path) {
  const json sidecar = json::parse(ReadFile(sidecar_path));
  EventStream stream;
  stream.horizon = sidecar.at("T").get<int>();
  stream.universe = sidecar.at("U").get<int>();
  stream.regime = ParseRegime(sidecar.at("regime").get<std::string>());

  std::istringstream in(ReadFile(csv_path));
  std::string line;
  if (!std::getline(in, line) || line != "t,item,count")
    throw std::invalid_argument("stream CSV missing 't,item,count' header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = SplitCsvLine(line);
    if (fields.size() != 3)
      throw std::invalid_argument("stream CSV row needs 3 fields: " + line);
    stream.Add(static_cast<int>(ParseInt(fields[0], "t")),
               static_cast<int>(ParseInt(fields[1], "item")),
               ParseInt(fields[2], "count"));
  }
  if (auto violation = ValidateStream(stream))
    throw std::invalid_argument("invalid stream file: " + *violation);
  return stream;
}

std::string EstimatesCsv(const EstimateTable& table, const EventStream& stream,
                         bool with_exact, bool clamp) {
  const std::string kind = QueryKindName(table.kind);
  std::string out = "query_kind,t1,t2,k,estimate,exact,abs_error\n";
  for (const auto& [t1, t2, raw] : table.rows) {
    double estimate = raw;
    if (clamp)
      estimate = std::round(
          std::clamp(estimate, 0.0, static_cast<double>(stream.universe)));
    out += kind + "," + std::to_string(t1) + "," + std::to_string(t2) + "," +
           std::to_string(table.k) + "," + FormatDouble(estimate);
    if (with_exact) {
      const double exact =
          static_cast<double>(ExactFreqAtLeast(stream, table.k, t1, t2));
      out += "," + FormatDouble(exact) + "," +
             FormatDouble(std::abs(estimate - exact));
    } else {
      out += ",,";
    }
    out += "\n";
  }
  return out;
}

std::string SweepCsv(SweepAxis axis, const std::vector<SweepPoint>& points) {
  std::string out = SweepAxisName(axis) +
                    ",trials,queries,max_abs_error,mean_abs_error,"
                    "empirical_alpha\n";
  for (const auto& point : points) {
    const auto& r = point.report;
    const size_t queries =
        r.trials > 0 ? r.rows.size() / static_cast<size_t>(r.trials) : 0;
    out += FormatDouble(point.value) + "," + std::to_string(r.trials) + "," +
           std::to_string(queries) + "," + FormatDouble(r.max_abs_error) +
           "," + FormatDouble(r.mean_abs_error) + "," +
           FormatDouble(r.empirical_alpha) + "\n";
  }
  return out;
}

GeneratorSpec ParseGeneratorSpecJson(const std::string& json_text) {
  const json j = json::parse(json_text);
  GeneratorSpec spec;
  spec.kind = ParseGeneratorKind(j.at("kind").get<std::string>());
  spec.horizon = j.at("T").get<int>();
  spec.universe = j.value("U", 0);
  spec.k = j.value("k", 1);
  spec.regime = ParseRegime(j.value("regime", std::string("bundle")));
  spec.seed = j.value("seed", uint64_t{0});
  spec.event_prob = j.value("event_prob", 0.5);
  spec.zipf_exponent = j.value("zipf_exponent", 1.0);
  spec.burst_length = j.value("burst_length", 8);
  if (j.contains("embed_points"))
    spec.embed_points = j.at("embed_points").get<std::vector<int>>();
  if (j.contains("embed_bits"))
    spec.embed_bits = j.at("embed_bits").get<std::vector<std::vector<int>>>();
  spec.embed_window = j.value("embed_window", 0);
  return spec;
}

std::string GeneratorSpecJson(const GeneratorSpec& spec) {
  json j{{"kind", GeneratorKindName(spec.kind)},
         {"T", spec.horizon},
         {"U", spec.universe},
         {"k", spec.k},
         {"regime", RegimeName(spec.regime)},
         {"seed", spec.seed},
         {"event_prob", spec.event_prob},
         {"zipf_exponent", spec.zipf_exponent},
         {"burst_length", spec.burst_length},
         {"embed_points", spec.embed_points},
         {"embed_bits", spec.embed_bits},
         {"embed_window", spec.embed_window}};
  return j.dump(2) + "\n";
}

std::string ManifestJson(const RunSettings& settings,
                         const EstimateTable& table) {
  json ledger = json::array();
  for (const auto& entry : table.ledger)
    ledger.push_back(json{{"label", entry.label},
                          {"nominal", BudgetJson(entry.nominal)},
                          {"used", BudgetJson(entry.used)}});
  const auto now = std::chrono::system_clock::now();
  json j{{"version", kLibraryVersion},
         {"inputs",
          json{{"stream_csv", settings.stream_csv},
               {"sidecar", settings.sidecar}}},
         {"config", ConfigJson(settings.config)},
         {"with_oracle", settings.with_oracle},
         {"clamp", settings.clamp},
         {"budget_ledger", ledger},
         {"unix_time",
          std::chrono::duration_cast<std::chrono::seconds>(
              now.time_since_epoch())
              .count()}};
  return j.dump(2) + "\n";
}

RunSettings ParseManifest(const std::string& json_text) {
  const json j = json::parse(json_text);
  RunSettings settings;
  settings.stream_csv = j.at("inputs").at("stream_csv").get<std::string>();
  settings.sidecar = j.at("inputs").at("sidecar").get<std::string>();
  settings.config = ConfigFromJson(j.at("config"));
  settings.with_oracle = j.at("with_oracle").get<bool>();
  settings.clamp = j.at("clamp").get<bool>();
  return settings;
}

SweepAxis ParseSweepAxis(const std::string& name) {
  if (name == "T") return SweepAxis::kHorizon;
  if (name == "W") return SweepAxis::kWindow;
  if (name == "k") return SweepAxis::kThreshold;
  if (name == "epsilon") return SweepAxis::kEpsilon;
  BadName("sweep axis", name);
}

SweepSpec ParseSweepSpecJson(const std::string& json_text) {
  const json j = json::parse(json_text);
  SweepSpec spec;
  spec.axis = ParseSweepAxis(j.at("axis").get<std::string>());
  spec.values = j.at("values").get<std::vector<double>>();
  spec.generator = ParseGeneratorSpecJson(j.at("generator").dump());
  spec.config = ConfigFromJson(j.at("config"));
  spec.trials = j.value("trials", 1);
  spec.max_queries = j.value("max_queries", 0);
  return spec;
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace dpfreq
