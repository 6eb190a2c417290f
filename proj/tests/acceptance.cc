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

// Acceptance run: one PASS/FAIL line per criterion. All campaigns use the
// virtual clock so verdicts do not depend on host speed.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fuce/campaign.h"
#include "fuce/concolic.h"
#include "fuce/corpus.h"
#include "fuce/report.h"
#include "fuce/solver.h"
#include "generators.h"

#ifndef FUCE_BINARY
#error "FUCE_BINARY must name the fuce executable"
#endif

namespace {

using namespace fuce;
namespace fs = std::filesystem;

constexpr int kRuns = 5;
constexpr size_t kSeedTests = 4;
constexpr double kRaceCutoff = 120;
constexpr double kCoverageCutoff = 60;
constexpr double kControlCutoff = 60;
// Must not exceed the cutoff; the default 1800 s would be rejected.
constexpr double kBudget = 30;
constexpr double kThreshold = 5;

int failures = 0;
auto criterion_start = std::chrono::steady_clock::now();

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       since)
      .count();
}

void Report(int id, bool ok, const std::string& detail) {
  std::ostringstream took;
  took << std::fixed << std::setprecision(1) << Seconds(criterion_start);
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail
            << " [" << took.str() << " s real]" << std::endl;
  if (!ok) ++failures;
  criterion_start = std::chrono::steady_clock::now();
}

const BenchmarkEntry& Entry(const std::vector<BenchmarkEntry>& suite,
                            const std::string& name) {
  for (const BenchmarkEntry& e : suite) {
    if (e.name == name) return e;
  }
  throw std::runtime_error("no corpus entry " + name);
}

std::vector<TestCase> SeedsFor(const Design& d, uint64_t run) {
  std::mt19937_64 rng(run);
  return RandomSeeds(d, kSeedTests, 4, rng);
}

CampaignConfig Config(Mode mode, Goal goal, double cutoff, uint64_t run,
                      uint64_t step_limit) {
  CampaignConfig c;
  c.time_cutoff = cutoff;
  c.time_threshold = kThreshold;
  c.time_budget = kBudget;
  c.rng_seed = run;
  c.goal = goal;
  c.mode = mode;
  c.step_limit = step_limit;
  c.virtual_clock = true;
  return c;
}

struct Ran {
  std::string label;
  const BenchmarkEntry* entry;
  CampaignResult result;
};

bool HasDecision(const ExecutionTrace& t, const Decision& d) {
  for (const Decision& x : t.decisions) {
    if (x == d) return true;
  }
  return false;
}

// Count of emissions whose replay misses the targeted decision.
size_t EmissionMisses(const Ran& r) {
  size_t misses = 0;
  for (const ConcolicEmission& em : r.result.report.emissions) {
    ExecutionTrace t = Execute(r.entry->dut, em.words, r.entry->step_limit);
    Decision want{em.target.branch, em.target.polarity, em.target.occurrence};
    if (!HasDecision(t, want)) ++misses;
  }
  return misses;
}

std::string Shell(const std::string& cmd) {
  return cmd + " > /dev/null 2>&1";
}

// Report text with the top-level "timestamps" object cut out.
std::string WithoutTimestamps(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  bool skipping = false;
  while (std::getline(in, line)) {
    if (line.starts_with("  \"timestamps\": {")) {
      skipping = true;
    } else if (skipping && (line == "  }" || line == "  },")) {
      skipping = false;
    } else if (!skipping) {
      out += line + "\n";
    }
  }
  return out;
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  const std::vector<BenchmarkEntry> suite = BuiltinSuite();
  const BenchmarkEntry& motivating = Entry(suite, "motivating_controller");
  std::vector<Ran> campaigns;  // criteria 1-3, reused by 6 and 9

  // 1. Motivating-example race.
  {
    int detected[3] = {0, 0, 0};
    const Mode modes[3] = {Mode::kFuce, Mode::kFuzz, Mode::kConcolic};
    for (int m = 0; m < 3; ++m) {
      for (int run = 0; run < kRuns; ++run) {
        CampaignConfig c = Config(modes[m], Goal::kDetect, kRaceCutoff, run,
                                  motivating.step_limit);
        CampaignResult r = RunCampaign(motivating.dut, motivating.golden,
                                       SeedsFor(motivating.dut, run), c);
        detected[m] += r.report.detected;
        campaigns.push_back({"c1/" + std::string(ModeName(modes[m])) + "/" +
                                 std::to_string(run),
                             &motivating, std::move(r)});
      }
    }
    std::ostringstream os;
    os << "motivating race over " << kRuns << " seeds, cutoff " << kRaceCutoff
       << " s virtual: fuce " << detected[0] << "/" << kRuns << ", fuzz "
       << detected[1] << "/" << kRuns << ", concolic " << detected[2] << "/"
       << kRuns;
    Report(1, detected[0] == kRuns && detected[1] == 0 && detected[2] == 0,
           os.str());
  }

  // 2. Phase structure of the fuce runs.
  {
    int good_phases = 0, good_emission = 0;
    std::string seen;
    for (const Ran& r : campaigns) {
      if (r.result.report.config.mode != Mode::kFuce) continue;
      const CampaignReport& rep = r.result.report;
      if (rep.PhaseSequence() == "fuzz_1-conc_1-fuzz_2") ++good_phases;
      if (seen.empty() || rep.PhaseSequence() != "fuzz_1-conc_1-fuzz_2") {
        seen = rep.PhaseSequence();
      }
      bool found = false;
      for (const ConcolicEmission& em : rep.emissions) {
        if (em.phase != "conc_1" || em.words.size() < 2) continue;
        if (em.words[0] != 23978 || em.words[1] != 5678) continue;
        ExecutionTrace t =
            Execute(motivating.dut, em.words, motivating.step_limit);
        if (HasDecision(t, Decision{0, Polarity::kTrue, 0})) found = true;
      }
      good_emission += found;
    }
    std::ostringstream os;
    os << "phases fuzz_1-conc_1-fuzz_2 in " << good_phases << "/" << kRuns
       << " (e.g. " << seen << "); conc_1 emitted {23978, 5678} covering the "
       << "guard true-edge in " << good_emission << "/" << kRuns;
    Report(2, good_phases == kRuns && good_emission == kRuns, os.str());
  }

  // 3. Coverage goal on the sort and codec entries.
  {
    bool ok = true;
    std::ostringstream os;
    for (const char* name : {"bubble_sort4", "adpcm_codec"}) {
      const BenchmarkEntry& e = Entry(suite, name);
      int full = 0;
      double worst = 100;
      for (int run = 0; run < kRuns; ++run) {
        CampaignConfig c = Config(Mode::kFuce, Goal::kCoverage,
                                  kCoverageCutoff, run, e.step_limit);
        CampaignResult r =
            RunCampaign(e.dut, e.golden, SeedsFor(e.dut, run), c);
        bool reached = r.report.branch_coverage_pct == 100.0 &&
                       r.report.total_seconds <= kCoverageCutoff;
        full += reached;
        worst = std::min(worst, r.report.branch_coverage_pct);
        campaigns.push_back(
            {"c3/" + std::string(name) + "/" + std::to_string(run), &e,
             std::move(r)});
      }
      ok = ok && full >= 4;
      os << name << " " << full << "/" << kRuns << " at 100% (min "
         << worst << "%); ";
    }
    os << "cutoff " << kCoverageCutoff << " s virtual, need >= 4/5 each";
    Report(3, ok, os.str());
  }

  // 4. Solver soundness on model-first predicates.
  {
    auto t0 = std::chrono::steady_clock::now();
    testing::PredicateGenerator gen(4);
    int sat = 0, unsat = 0, unknown = 0, bad_models = 0;
    for (int i = 0; i < 10000; ++i) {
      testing::GeneratedPredicate g = gen.Next(6, 4);
      VirtualClock clock;
      SolverVerdict v = Solve(g.predicate, std::vector<Word>{}, clock, 0.05,
                              SolverOptions{static_cast<uint64_t>(i)});
      if (v.kind == SolverVerdict::Kind::kUnsat) ++unsat;
      if (v.kind == SolverVerdict::Kind::kUnknown) ++unknown;
      if (v.sat()) {
        ++sat;
        if (!Satisfies(g.predicate, ApplyModel(std::vector<Word>{}, v.model))) {
          ++bad_models;
        }
      }
    }
    double secs = Seconds(t0);
    std::ostringstream os;
    os << "10000 satisfiable predicates: sat " << sat << ", unknown "
       << unknown << ", unsat " << unsat << ", failing models " << bad_models
       << ", " << secs << " s (limit 60)";
    Report(4, unsat == 0 && bad_models == 0 && secs <= 60, os.str());
  }

  // 5. Shadow consistency on random designs.
  {
    testing::DesignGenerator gen(5);
    int violations = 0, decisions = 0, symbolic = 0;
    for (int i = 0; i < 1000; ++i) {
      Design d = testing::BoundedDesign(gen, 20);
      std::vector<Word> in = gen.Input();
      ShadowTrace s = ShadowExecute(d, in, 20000);
      ExecutionTrace c = Execute(d, in, 20000);
      bool ok = s.records.size() == c.decisions.size();
      for (size_t k = 0; ok && k < s.records.size(); ++k) {
        const ConditionRecord& r = s.records[k];
        std::optional<Word> v = EvaluateSym(r.cond, in);
        symbolic += !IsConst(r.cond);
        ok = r.branch == c.decisions[k].branch &&
             r.occurrence == c.decisions[k].occurrence &&
             r.taken == c.decisions[k].polarity && v.has_value() &&
             ToPolarity(*v != 0) == r.taken;
      }
      decisions += static_cast<int>(c.decisions.size());
      violations += !ok;
    }
    std::ostringstream os;
    os << "1000 random (design, input) pairs, " << decisions
       << " decisions (" << symbolic << " input-dependent): " << violations
       << " violations";
    Report(5, violations == 0, os.str());
  }

  // 6. Emission soundness over the campaigns of criteria 1-3.
  {
    size_t total = 0, misses = 0;
    for (const Ran& r : campaigns) {
      total += r.result.report.emissions.size();
      misses += EmissionMisses(r);
    }
    std::ostringstream os;
    os << total << " concolic emissions across " << campaigns.size()
       << " campaigns, " << misses << " miss their target on replay";
    Report(6, misses == 0 && total > 0, os.str());
  }

  // 7. Detector integrity.
  {
    const BenchmarkEntry& control = Entry(suite, "checksum");
    GoldenModel self = GoldenModel::FromDesign(CloneDesign(control.dut));
    int false_positives = 0;
    for (int run = 0; run < kRuns; ++run) {
      CampaignConfig c = Config(Mode::kFuce, Goal::kDetect, kControlCutoff,
                                run, control.step_limit);
      false_positives +=
          RunCampaign(control.dut, self, SeedsFor(control.dut, run), c)
              .report.detected;
    }
    int triggers = 0, trigger_hits = 0;
    int stealth_divergences = 0;
    std::mt19937_64 rng(7);
    for (const BenchmarkEntry& e : suite) {
      for (const std::vector<Word>& t : e.trigger_tests) {
        ++triggers;
        DetectionVerdict v = Check(e.dut, e.golden, t, e.step_limit);
        if (v.detected && v.witness &&
            Check(e.dut, e.golden, v.witness->test, e.step_limit).detected) {
          ++trigger_hits;
        }
      }
      for (int k = 0; k < 1000;) {
        std::vector<Word> w(e.dut.input_arity + rng() % 16);
        for (Word& x : w) {
          x = rng() % 2 ? static_cast<Word>(rng() % 256)
                        : static_cast<Word>(rng());
        }
        if (FiresTrigger(e, w)) continue;
        ++k;
        stealth_divergences +=
            Check(e.dut, e.golden, w, e.step_limit).detected;
      }
    }
    std::ostringstream os;
    os << "control self-pair over " << kRuns << " fuce campaigns: "
       << false_positives << " detections; trigger tests detected "
       << trigger_hits << "/" << triggers << "; stealth divergences "
       << stealth_divergences << " over " << suite.size() << " x 1000";
    Report(7,
           false_positives == 0 && trigger_hits == triggers && triggers > 0 &&
               stealth_divergences == 0,
           os.str());
  }

  // 8. CLI determinism.
  {
    fs::path dir = fs::temp_directory_path() / "fuce_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir / "seeds");
    std::string bin = FUCE_BINARY;
    bool ok = std::system(Shell(bin + " bench --export " +
                                (dir / "designs").string()).c_str()) == 0;
    for (const TestCase& t : SeedsFor(motivating.dut, 0)) {
      static int n = 0;
      WriteTestCase(t.words, dir / "seeds" / ("s" + std::to_string(n++) + ".tc"));
    }
    std::vector<std::string> compared;
    for (const char* name : {"motivating_controller", "adpcm_codec"}) {
      std::string base = bin + " run --design " +
                         (dir / "designs" / (std::string(name) + ".fd")).string() +
                         " --golden " +
                         (dir / "designs" / (std::string(name) + ".golden.fd"))
                             .string() +
                         " --seeds " + (dir / "seeds").string() +
                         " --mode fuce --goal coverage --virtual-clock"
                         " --time-cutoff 20 --time-budget 8 --seed 3";
      std::string texts[2];
      for (int k = 0; k < 2 && ok; ++k) {
        fs::path out = dir / (std::string(name) + std::to_string(k) + ".json");
        ok = std::system(Shell(base + " --report " + out.string()).c_str()) == 0;
        if (!ok) break;
        std::string text = ReadFile(out);
        ok = nlohmann::json::parse(text).contains("timestamps");
        texts[k] = WithoutTimestamps(text);
      }
      ok = ok && !texts[0].empty() && texts[0] == texts[1];
      compared.push_back(name);
    }
    std::ostringstream os;
    os << "two `fuce run --virtual-clock` invocations per design ("
       << compared[0] << ", " << compared[1]
       << ") give byte-identical report JSON outside the timestamps field";
    Report(8, ok, os.str());
    fs::remove_all(dir);
  }

  // 9. Coverage accounting.
  {
    int mismatches = 0;
    std::string first;
    for (const Ran& r : campaigns) {
      const CampaignReport& rep = r.result.report;
      if (rep.branch_coverage_pct != rep.incremental_coverage_pct) {
        ++mismatches;
        if (first.empty()) first = " (first: " + r.label + ")";
      }
    }
    std::ostringstream os;
    os << "replayed vs incremental coverage equal in "
       << campaigns.size() - mismatches << "/" << campaigns.size()
       << " campaigns" << first;
    Report(9, mismatches == 0, os.str());
  }

  std::cout << "acceptance finished in " << Seconds(start) << " s, "
            << failures << " failing" << std::endl;
  return failures == 0 ? 0 : 1;
}
