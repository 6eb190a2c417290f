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

#include "fuce/campaign.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <memory>
#include <stdexcept>

#include "fuce/clock.h"
#include "fuce/coverage.h"

namespace fuce {
namespace {

std::string IsoNow() {
  std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Campaign {
 public:
  Campaign(const Design& design, const GoldenModel& golden,
           const CampaignConfig& config)
      : design_(design),
        golden_(golden),
        config_(config),
        clock_(config.virtual_clock
                   ? std::unique_ptr<Clock>(new VirtualClock())
                   : std::unique_ptr<Clock>(new WallClock())),
        global_(design.branch_count),
        fuzzer_(design,
                FuzzOptions{config.k_base, config.k_max, config.step_limit,
                            config.design_literals},
                config.rng_seed),
        concolic_(design, ConcolicOptions{config.step_limit, 4, 0.05,
                                          config.rng_seed}) {}

  CampaignResult Run(std::vector<TestCase> seeds) {
    report_.design = design_.name;
    report_.config = config_;
    report_.seed_count = seeds.size();
    report_.started_at = IsoNow();
    report_.total_edges = global_.total_edges();

    // Concolic-only campaigns have no fuzz phase; seeds belong to conc_1.
    EnterPhase(config_.mode == Mode::kConcolic ? PhaseId{PhaseKind::kConc, 1}
                                               : PhaseId{});
    Sample();
    for (TestCase& s : seeds) {
      s.origin = Origin::kSeed;
      s.phase = phase_;
      ExecutionTrace trace;
      CoverageDelta delta;
      IsInteresting(design_, s.words, global_, *clock_, config_.step_limit,
                    &trace, &delta);
      ++report_.executions;
      SeedMetrics m{trace.steps_used, delta.pairs.size(), 0};
      uint64_t id = queue_.Append(std::move(s), m, clock_->Now());
      Sample();
      if (Inspect(trace, queue_.entries()[id].test.words, id)) {
        return Finish();
      }
    }
    if (GoalReached()) return Finish();

    switch (config_.mode) {
      case Mode::kFuce:
      case Mode::kFuzz:
        RunAlternating();
        break;
      case Mode::kConcolic:
        RunConcolicOnly();
        break;
    }
    return Finish();
  }

  const ExecutionTree& tree() const { return concolic_.tree(); }

 private:
  double Now() const { return clock_->Now(); }
  bool CutoffReached() const { return Now() >= config_.time_cutoff; }

  bool GoalReached() const {
    if (config_.goal == Goal::kDetect) return report_.detected;
    return global_.covered_edges() == global_.total_edges();
  }

  void EnterPhase(PhaseId p) {
    if (!report_.phases.empty()) {
      PhaseRow& last = report_.phases.back();
      last.wall_seconds = Now() - last.start_seconds;
    }
    phase_ = p;
    report_.phases.push_back({p, 0, Now(), 0});
  }

  void Sample() {
    TimelineSample s{Now(), global_.BranchCoveragePct(), phase_.ToString()};
    auto& tl = report_.timeline;
    if (!tl.empty() && tl.back().coverage_pct == s.coverage_pct) return;
    if (!tl.empty() && tl.back().t_seconds >= s.t_seconds) {
      tl.back().coverage_pct = s.coverage_pct;
      tl.back().phase = s.phase;
      return;
    }
    tl.push_back(std::move(s));
  }

  // Runs the detector on a retained or emitted test. Returns true when the
  // campaign should stop.
  bool Inspect(const ExecutionTrace& trace, const std::vector<Word>& words,
               std::optional<uint64_t> id) {
    if (!report_.detected) {
      DetectionVerdict v =
          CheckTrace(trace, golden_, words, config_.step_limit, id);
      if (!golden_.is_table()) {
        // The golden run costs about as much as the DUT run.
        clock_->Charge(ExecTicks(trace.steps_used));
      }
      if (v.detected) {
        report_.detected = true;
        report_.witness = std::move(v.witness);
        report_.detected_at = Now();
      }
    }
    return GoalReached();
  }

  void RunAlternating() {
    while (!CutoffReached()) {
      // Fuzz phase.
      double last_retained = Now();
      bool stop = false;
      auto on_retain = [&](const QueueEntry& e, const ExecutionTrace& t) {
        last_retained = Now();
        ++report_.phases.back().tests_generated;
        Sample();
        stop = Inspect(t, e.test.words, e.id);
        return stop;
      };
      auto should_yield = [&] {
        if (CutoffReached()) return true;
        return config_.mode == Mode::kFuce &&
               Now() - last_retained > config_.time_threshold;
      };
      while (true) {
        RoundOutcome r = fuzzer_.FuzzRound(queue_, global_, *clock_, phase_,
                                           on_retain, should_yield);
        report_.executions += r.executions;
        if (stop || CutoffReached()) return;
        if (config_.mode == Mode::kFuce &&
            Now() - last_retained > config_.time_threshold) {
          break;
        }
      }

      // Concolic phase.
      EnterPhase(phase_.Next());
      if (RunConcolicPhase(config_.time_budget)) return;
      if (CutoffReached()) return;
      EnterPhase(phase_.Next());
    }
  }

  // Returns true when the campaign should stop.
  bool RunConcolicPhase(double budget) {
    budget = std::min(budget, config_.time_cutoff - Now());
    if (budget <= 0) return false;
    bool stop = false;
    auto sink = [&](TestCase test, const ExecutionTrace& trace,
                    const EmissionTarget& target) {
      ++report_.executions;
      CoverageDelta delta = CoverageOf(trace);
      global_.Merge(delta);
      // Emissions are replay-verified, so each covered its target and
      // re-enters the queue.
      SeedMetrics m{trace.steps_used, delta.pairs.size(), 0};
      std::vector<Word> words = test.words;
      uint64_t id = queue_.Append(std::move(test), m, Now());
      ++report_.phases.back().tests_generated;
      report_.emissions.push_back({id, words, target, phase_.ToString()});
      Sample();
      stop = Inspect(trace, words, id);
      return stop;
    };
    std::vector<TestCase> snapshot = queue_.Snapshot();
    std::vector<uint64_t> ids = queue_.SnapshotIds();
    ConcolicOutcome o = concolic_.RunPhase(snapshot, ids, global_, *clock_,
                                           budget, phase_, sink);
    last_concolic_emitted_ = o.tests_emitted;
    ConcolicOutcome& sum = report_.concolic;
    sum.tests_emitted += o.tests_emitted;
    sum.budget_exhausted = sum.budget_exhausted || o.budget_exhausted;
    sum.stopped = sum.stopped || o.stopped;
    sum.sat += o.sat;
    sum.unsat += o.unsat;
    sum.unknown += o.unknown;
    sum.replay_failures += o.replay_failures;
    return stop;
  }

  void RunConcolicOnly() {
    while (!CutoffReached()) {
      if (RunConcolicPhase(config_.time_cutoff - Now())) return;
      if (last_concolic_emitted_ == 0) return;
      // Rounds are numbered conc_1, conc_2, ... with no fuzz phase between.
      EnterPhase(PhaseId{PhaseKind::kConc, phase_.index + 1});
    }
  }

  CampaignResult Finish() {
    if (!report_.phases.empty()) {
      PhaseRow& last = report_.phases.back();
      last.wall_seconds = Now() - last.start_seconds;
    }
    report_.total_seconds =
        report_.detected_at && config_.goal == Goal::kDetect
            ? *report_.detected_at
            : Now();
    uint64_t generated = 0;
    for (const PhaseRow& r : report_.phases) generated += r.tests_generated;
    report_.total_tests = generated;
    report_.covered_edges = global_.covered_edges();
    report_.incremental_coverage_pct = global_.BranchCoveragePct();
    report_.branch_coverage_pct =
        ReportCoverage(design_, queue_.Snapshot(), config_.step_limit);
    if (report_.detected) {
      report_.outcome = "detected";
    } else if (report_.total_seconds >= config_.time_cutoff) {
      report_.outcome = "TO";
    } else {
      report_.outcome = "not-detected";
    }
    report_.finished_at = IsoNow();
    return {std::move(report_), std::move(queue_)};
  }

  const Design& design_;
  const GoldenModel& golden_;
  CampaignConfig config_;
  std::unique_ptr<Clock> clock_;
  CoverageMap global_;
  FuzzQueue queue_;
  Fuzzer fuzzer_;
  ConcolicEngine concolic_;
  CampaignReport report_;
  PhaseId phase_;
  uint64_t last_concolic_emitted_ = 0;
};

}  // namespace

std::string_view ModeName(Mode m) {
  switch (m) {
    case Mode::kFuce: return "fuce";
    case Mode::kFuzz: return "fuzz";
    case Mode::kConcolic: return "concolic";
  }
  return "fuce";
}

std::string_view GoalName(Goal g) {
  return g == Goal::kDetect ? "detect" : "coverage";
}

std::optional<Mode> ParseMode(std::string_view s) {
  if (s == "fuce") return Mode::kFuce;
  if (s == "fuzz" || s == "fuzz-only") return Mode::kFuzz;
  if (s == "concolic" || s == "concolic-only") return Mode::kConcolic;
  return std::nullopt;
}

std::optional<Goal> ParseGoal(std::string_view s) {
  if (s == "detect") return Goal::kDetect;
  if (s == "coverage") return Goal::kCoverage;
  return std::nullopt;
}

void CampaignConfig::Validate() const {
  if (!(time_threshold > 0 && time_threshold < time_budget &&
        time_budget <= time_cutoff)) {
    throw std::invalid_argument(
        "config requires 0 < time_threshold < time_budget <= time_cutoff");
  }
  if (step_limit == 0) throw std::invalid_argument("step_limit must be > 0");
  if (k_base == 0 || k_max < 1) {
    throw std::invalid_argument("k_base and k_max must be >= 1");
  }
}

std::string CampaignReport::PhaseSequence() const {
  std::string out;
  for (const PhaseRow& r : phases) {
    if (!out.empty()) out += "-";
    out += r.phase.ToString();
  }
  return out;
}

CampaignResult RunCampaign(const Design& design, const GoldenModel& golden,
                           std::vector<TestCase> seeds,
                           const CampaignConfig& config,
                           std::string* tree_dot) {
  config.Validate();
  if (seeds.empty()) throw std::invalid_argument("no seed tests");
  Campaign c(design, golden, config);
  CampaignResult result = c.Run(std::move(seeds));
  if (tree_dot) *tree_dot = c.tree().ToDot();
  return result;
}

double ReportCoverage(const Design& design, const std::vector<TestCase>& tests,
                      uint64_t step_limit) {
  CoverageMap fresh(design.branch_count);
  for (const TestCase& t : tests) {
    fresh.Merge(CoverageOf(Execute(design, t.words, step_limit)));
  }
  return fresh.BranchCoveragePct();
}

}  // namespace fuce
