// Copyright 2026 The FuCE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Report serialization, comparison tables and on-disk test formats.
#ifndef FUCE_REPORT_H_
#define FUCE_REPORT_H_

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuce/campaign.h"
#include "fuce/detector.h"
#include "fuce/fuzz.h"
#include "json.hpp"

namespace fuce {

inline constexpr int kReportSchema = 1;

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what) {}
};

nlohmann::json ReportToJson(const CampaignReport& report);
// Accepts every schema version up to kReportSchema.
CampaignReport ReportFromJson(const nlohmann::json& j);

// Versioned JSON via temp file + rename.
void EmitReport(const CampaignReport& report,
                const std::filesystem::path& path);
// `t_seconds,coverage_pct,phase` rows.
std::string TimelineCsv(const CampaignReport& report);

nlohmann::json WitnessToJson(const Witness& w);

struct ComparisonRow {
  std::string benchmark;
  std::string mode;
  std::optional<uint64_t> tests_generated;
  std::optional<double> wall_seconds;
  std::optional<double> coverage_pct;
  std::optional<bool> detected;
  std::string outcome;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;

  std::string ToCsv() const;
  std::string ToText() const;
};

struct NamedReport {
  std::string benchmark;
  CampaignReport report;
};

// Rows ordered by benchmark name, then mode fuce/fuzz/concolic; grid cells
// without a report are filled with empty values. Throws
// std::invalid_argument on duplicate (benchmark, mode) cells.
ComparisonTable BuildComparison(const std::vector<NamedReport>& reports);

// Raw little-endian 32-bit words.
void WriteTestCase(std::span<const Word> words,
                   const std::filesystem::path& path);
std::vector<Word> ReadTestCase(const std::filesystem::path& path);
// Either raw `.tc` or JSON {"words": [...]}.
std::vector<Word> LoadTestFile(const std::filesystem::path& path);
// Every `.tc` / `.json` test in `dir`, sorted by file name.
std::vector<TestCase> LoadSeedDir(const std::filesystem::path& dir);

// `id_<n>,src_<origin>,phase_<i>.tc` plus a `.json` metrics sidecar.
void PersistQueue(const FuzzQueue& queue, const std::filesystem::path& dir);

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& contents);
std::string ReadFile(const std::filesystem::path& path);

}  // namespace fuce

#endif  // FUCE_REPORT_H_
