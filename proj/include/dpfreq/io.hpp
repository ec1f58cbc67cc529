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

#ifndef DPFREQ_IO_HPP_
#define DPFREQ_IO_HPP_

#include <string>

#include "dpfreq/experiment.hpp"
#include "dpfreq/generators.hpp"
#include "dpfreq/stream.hpp"

namespace dpfreq {

// Locale-independent shortest-round-trip formatting; all CSVs use '\n' line
// endings and '.' decimal separators.
std::string FormatDouble(double value);

std::string RegimeName(Regime regime);
Regime ParseRegime(const std::string& name);
std::string QueryKindName(QueryKind kind);
QueryKind ParseQueryKind(const std::string& name);
std::string NoiseKindName(NoiseKind kind);
NoiseKind ParseNoiseKind(const std::string& name);
std::string DpLevelName(DpLevel level);
DpLevel ParseDpLevel(const std::string& name);
std::string CompositionKindName(CompositionKind kind);
CompositionKind ParseCompositionKind(const std::string& name);
std::string GeneratorKindName(GeneratorKind kind);
GeneratorKind ParseGeneratorKind(const std::string& name);

// Stream file format: CSV with header `t,item,count` plus a JSON sidecar
// {"T":..., "U":..., "regime":"bundle"|"singleton"}.
void WriteStream(const EventStream& stream, const std::string& csv_path,
                 const std::string& sidecar_path);
EventStream ReadStream(const std::string& csv_path,
                       const std::string& sidecar_path);

std::string StreamCsv(const EventStream& stream);
std::string StreamSidecarJson(const EventStream& stream);

// Estimates CSV: `query_kind,t1,t2,k,estimate,exact,abs_error`. Exact and
// abs_error columns are empty unless with_exact.
std::string EstimatesCsv(const EstimateTable& table, const EventStream& stream,
                         bool with_exact, bool clamp);

// Sweep summary CSV: one row per axis value.
std::string SweepCsv(SweepAxis axis, const std::vector<SweepPoint>& points);

GeneratorSpec ParseGeneratorSpecJson(const std::string& json_text);
std::string GeneratorSpecJson(const GeneratorSpec& spec);

// Everything cmd_run consumed, so a manifest alone reproduces the run.
struct RunSettings {
  std::string stream_csv;
  std::string sidecar;
  EstimatorConfig config;
  bool with_oracle = false;
  bool clamp = false;
};

// Run manifest: full config echo, input paths, library version, master seed,
// budget ledger (nominal and used per subinstance), timestamp.
std::string ManifestJson(const RunSettings& settings,
                         const EstimateTable& table);
RunSettings ParseManifest(const std::string& json_text);

SweepAxis ParseSweepAxis(const std::string& name);

struct SweepSpec {
  SweepAxis axis = SweepAxis::kHorizon;
  std::vector<double> values;
  GeneratorSpec generator;
  EstimatorConfig config;
  int trials = 1;
  int max_queries = 0;
};

SweepSpec ParseSweepSpecJson(const std::string& json_text);

void WriteFile(const std::string& path, const std::string& contents);
std::string ReadFile(const std::string& path);

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace dpfreq

#endif  // DPFREQ_IO_HPP_
