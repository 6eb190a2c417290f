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

// Command-line driver: single campaigns (`run`) and the built-in suite
// (`bench`).
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuce/campaign.h"
#include "fuce/corpus.h"
#include "fuce/report.h"

namespace {

namespace fs = std::filesystem;
using namespace fuce;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CommonFlags {
  double time_cutoff = 7200;
  double time_threshold = 5;
  double time_budget = 1800;
  uint64_t seed = 0;
  std::string goal = "detect";
  uint64_t step_limit = 0;  // 0 = default / per-benchmark
  uint32_t k_base = 64;
  uint32_t k_max = 1024;
  bool vanilla_table = false;
  bool virtual_clock = false;
};

void AddCommon(CLI::App* app, CommonFlags& f) {
  app->add_option("--time-cutoff", f.time_cutoff, "Campaign wall-time limit (s)");
  app->add_option("--time-threshold", f.time_threshold,
                  "Fuzzer stagnation time before a concolic phase (s)");
  app->add_option("--time-budget", f.time_budget,
                  "Time budget of one concolic phase (s)");
  app->add_option("--seed", f.seed, "RNG seed");
  app->add_option("--goal", f.goal, "detect or coverage")
      ->check(CLI::IsMember({"detect", "coverage"}));
  app->add_option("--step-limit", f.step_limit, "Interpreter step limit");
  app->add_option("--k-base", f.k_base, "Base havoc energy");
  app->add_option("--k-max", f.k_max, "Maximum havoc energy");
  app->add_flag("--vanilla-table", f.vanilla_table,
                "Do not add design literals to the interesting values");
  app->add_flag("--virtual-clock", f.virtual_clock,
                "Measure time in charged work instead of wall time");
}

CampaignConfig ConfigFrom(const CommonFlags& f, Mode mode,
                          uint64_t default_step_limit) {
  CampaignConfig c;
  c.time_cutoff = f.time_cutoff;
  c.time_threshold = f.time_threshold;
  c.time_budget = f.time_budget;
  c.rng_seed = f.seed;
  c.goal = *ParseGoal(f.goal);
  c.mode = mode;
  c.step_limit = f.step_limit ? f.step_limit : default_step_limit;
  c.k_base = f.k_base;
  c.k_max = f.k_max;
  c.design_literals = !f.vanilla_table;
  c.virtual_clock = f.virtual_clock;
  return c;
}

GoldenModel LoadGolden(const fs::path& path) {
  std::string text = ReadFile(path);
  if (path.extension() == ".table") return GoldenModel::FromTableJson(text);
  return GoldenModel::FromDesign(ParseDesign(text));
}

void PrintSummary(const std::string& name, const CampaignReport& r) {
  std::cout << name << " mode=" << ModeName(r.config.mode)
            << " outcome=" << r.outcome << " phases=" << r.PhaseSequence()
            << " tests=" << r.total_tests << " seconds=" << r.total_seconds
            << " coverage=" << r.branch_coverage_pct << "%\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid fuzzing and concolic trojan detection"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string design_path, golden_path, seeds_dir, mode_name = "fuce";
  std::string report_path, timeline_path, dump_tree_path, queue_dir;
  CLI::App* run = app.add_subcommand("run", "Run one campaign");
  run->add_option("--design", design_path, "DUT design (.fd)")->required();
  run->add_option("--golden", golden_path, "Golden model (.fd or .table)")
      ->required();
  run->add_option("--seeds", seeds_dir, "Directory of seed tests")->required();
  run->add_option("--mode", mode_name, "fuce, fuzz or concolic")
      ->check(CLI::IsMember({"fuce", "fuzz", "concolic"}));
  run->add_option("--report", report_path, "Report JSON output")->required();
  run->add_option("--timeline", timeline_path, "Coverage timeline CSV");
  run->add_option("--dump-tree", dump_tree_path,
                  "Write the execution tree as DOT");
  run->add_option("--queue-dir", queue_dir, "Persist the final queue here");
  AddCommon(run, run_flags);

  CommonFlags bench_flags;
  bench_flags.time_cutoff = 120;
  bench_flags.time_budget = 30;
  std::string suite = "builtin", bench_mode = "all", bench_dir, export_dir;
  size_t seed_count = 4;
  bool faithful = false;
  CLI::App* bench =
      app.add_subcommand("bench", "Run the built-in suite and compare modes");
  bench->add_option("--suite", suite, "Benchmark suite")
      ->check(CLI::IsMember({"builtin"}));
  bench->add_option("--mode", bench_mode, "all, fuce, fuzz or concolic")
      ->check(CLI::IsMember({"all", "fuce", "fuzz", "concolic"}));
  bench->add_option("--report", bench_dir, "Output directory for reports");
  bench->add_option("--export", export_dir,
                    "Write the suite's .fd sources here and exit");
  bench->add_option("--seed-count", seed_count, "Random seeds per campaign");
  bench->add_flag("--faithful", faithful,
                  "Use the full-size cycle threshold of the controller");
  AddCommon(bench, bench_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      Design design = ParseDesign(ReadFile(design_path));
      GoldenModel golden = LoadGolden(golden_path);
      std::vector<TestCase> seeds = LoadSeedDir(seeds_dir);
      if (seeds.empty()) {
        std::cerr << "no seed tests in " << seeds_dir << "\n";
        return kExitUsage;
      }
      CampaignConfig config =
          ConfigFrom(run_flags, *ParseMode(mode_name), kDefaultStepLimit);
      std::string dot;
      CampaignResult result =
          RunCampaign(design, golden, std::move(seeds), config,
                      dump_tree_path.empty() ? nullptr : &dot);
      EmitReport(result.report, report_path);
      if (!timeline_path.empty()) {
        WriteFileAtomic(timeline_path, TimelineCsv(result.report));
      }
      if (!dump_tree_path.empty()) WriteFileAtomic(dump_tree_path, dot);
      if (!queue_dir.empty()) PersistQueue(result.queue, queue_dir);
      PrintSummary(design.name, result.report);
      return kExitOk;
    }

    SuiteOptions so;
    so.faithful = faithful;
    std::vector<BenchmarkEntry> entries = BuiltinSuite(so);
    if (!export_dir.empty()) {
      fs::create_directories(export_dir);
      for (const BenchmarkEntry& e : entries) {
        WriteFileAtomic(fs::path(export_dir) / (e.name + ".fd"), e.dut_source);
        WriteFileAtomic(fs::path(export_dir) / (e.name + ".golden.fd"),
                        e.golden_source);
      }
      std::cout << "exported " << entries.size() << " designs to "
                << export_dir << "\n";
      return kExitOk;
    }
    if (bench_dir.empty()) {
      std::cerr << "bench needs --report <dir> or --export <dir>\n";
      return kExitUsage;
    }
    fs::create_directories(bench_dir);
    std::vector<Mode> modes;
    if (bench_mode == "all") {
      modes = {Mode::kFuce, Mode::kFuzz, Mode::kConcolic};
    } else {
      modes = {*ParseMode(bench_mode)};
    }
    std::vector<NamedReport> reports;
    for (const BenchmarkEntry& e : entries) {
      for (Mode m : modes) {
        std::mt19937_64 rng(bench_flags.seed);
        std::vector<TestCase> seeds =
            RandomSeeds(e.dut, seed_count, 4, rng);
        CampaignConfig config = ConfigFrom(bench_flags, m, e.step_limit);
        CampaignResult result =
            RunCampaign(e.dut, e.golden, std::move(seeds), config);
        std::string stem = e.name + "." + std::string(ModeName(m));
        EmitReport(result.report, fs::path(bench_dir) / (stem + ".json"));
        WriteFileAtomic(fs::path(bench_dir) / (stem + ".timeline.csv"),
                        TimelineCsv(result.report));
        PrintSummary(e.name, result.report);
        reports.push_back({e.name, std::move(result.report)});
      }
    }
    ComparisonTable table = BuildComparison(reports);
    WriteFileAtomic(fs::path(bench_dir) / "comparison.csv", table.ToCsv());
    WriteFileAtomic(fs::path(bench_dir) / "comparison.txt", table.ToText());
    std::cout << "\n" << table.ToText();
    return kExitOk;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SemanticError& e) {
    std::cerr << "semantic error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad golden table: " << e.what() << "\n";
    return kExitUsage;
  }
}
