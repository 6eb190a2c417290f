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

// Campaign loop: fuzz phases until coverage stagnates, then a budgeted
// concolic phase whose tests are fed back to the fuzzer, with every retained
// or emitted test checked against the golden model.
#ifndef FUCE_CAMPAIGN_H_
#define FUCE_CAMPAIGN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuce/concolic.h"
#include "fuce/detector.h"
#include "fuce/dsl.h"
#include "fuce/fuzz.h"
#include "fuce/test_case.h"

namespace fuce {

enum class Mode : uint8_t { kFuce, kFuzz, kConcolic };
enum class Goal : uint8_t { kDetect, kCoverage };

std::string_view ModeName(Mode m);
std::string_view GoalName(Goal g);
std::optional<Mode> ParseMode(std::string_view s);
std::optional<Goal> ParseGoal(std::string_view s);

struct CampaignConfig {
  double time_cutoff = 7200;
  double time_threshold = 5;
  double time_budget = 1800;
  uint64_t rng_seed = 0;
  Goal goal = Goal::kDetect;
  Mode mode = Mode::kFuce;
  uint64_t step_limit = kDefaultStepLimit;
  uint32_t k_base = 64;
  uint32_t k_max = 1024;
  bool design_literals = true;
  bool virtual_clock = false;

  // Throws std::invalid_argument unless
  // 0 < time_threshold < time_budget <= time_cutoff and the energy bounds
  // are sane.
  void Validate() const;
};

struct PhaseRow {
  PhaseId phase;
  uint64_t tests_generated = 0;  // retained (fuzz) or emitted (concolic)
  double start_seconds = 0;
  double wall_seconds = 0;
};

struct TimelineSample {
  double t_seconds = 0;
  double coverage_pct = 0;
  std::string phase;
};

struct ConcolicEmission {
  std::optional<uint64_t> queue_id;
  std::vector<Word> words;
  EmissionTarget target;
  std::string phase;
};

struct CampaignReport {
  std::string design;
  CampaignConfig config;
  uint64_t seed_count = 0;
  std::vector<PhaseRow> phases;
  double branch_coverage_pct = 0;      // ground-truth replay of the queue
  double incremental_coverage_pct = 0;  // from the live coverage map
  size_t covered_edges = 0;
  size_t total_edges = 0;
  bool detected = false;
  std::optional<Witness> witness;
  std::optional<double> detected_at;
  uint64_t total_tests = 0;
  uint64_t executions = 0;
  double total_seconds = 0;
  std::string outcome;  // "detected", "TO" or "not-detected"
  std::vector<TimelineSample> timeline;
  ConcolicOutcome concolic;  // summed over phases
  std::vector<ConcolicEmission> emissions;
  // Host wall-clock timestamps; excluded from determinism comparisons.
  std::string started_at;
  std::string finished_at;

  std::string PhaseSequence() const;  // e.g. "fuzz_1-conc_1-fuzz_2"
};

struct CampaignResult {
  CampaignReport report;
  FuzzQueue queue;
};

// `seeds` must be non-empty. Throws std::invalid_argument otherwise or when
// the config is invalid. When `tree_dot` is set it receives the final
// execution tree as a DOT graph.
CampaignResult RunCampaign(const Design& design, const GoldenModel& golden,
                           std::vector<TestCase> seeds,
                           const CampaignConfig& config,
                           std::string* tree_dot = nullptr);

// Covered edges over all edges (x100) from replaying `tests` against a
// fresh coverage map.
double ReportCoverage(const Design& design, const std::vector<TestCase>& tests,
                      uint64_t step_limit = kDefaultStepLimit);

}  // namespace fuce

#endif  // FUCE_CAMPAIGN_H_
