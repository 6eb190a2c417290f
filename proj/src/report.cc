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

#include "fuce/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace fuce {
namespace {

using nlohmann::json;

json OptWord(const std::optional<Word>& w) {
  return w ? json(*w) : json(nullptr);
}

std::optional<Word> WordOpt(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<Word>();
}

json FaultJson(const std::optional<RuntimeFault>& f) {
  return f ? json(FaultName(*f)) : json(nullptr);
}

std::optional<RuntimeFault> FaultFromJson(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>() == "DivByZero" ? RuntimeFault::kDivByZero
                                             : RuntimeFault::kStepLimitExceeded;
}

PhaseId ParsePhase(const std::string& s) {
  PhaseId p;
  size_t us = s.find('_');
  p.kind = s.substr(0, us) == "conc" ? PhaseKind::kConc : PhaseKind::kFuzz;
  p.index = static_cast<uint32_t>(std::stoul(s.substr(us + 1)));
  return p;
}

Witness WitnessFromJson(const json& j) {
  Witness w;
  if (!j.at("test_id").is_null()) w.test_id = j.at("test_id").get<uint64_t>();
  w.test = j.at("test").get<std::vector<Word>>();
  w.divergence_index = j.at("divergence_index").get<size_t>();
  w.dut_value = WordOpt(j.at("dut_value"));
  w.golden_value = WordOpt(j.at("golden_value"));
  w.dut_trace.values = j.at("dut_trace").get<std::vector<Word>>();
  w.golden_trace.values = j.at("golden_trace").get<std::vector<Word>>();
  w.dut_fault = FaultFromJson(j.at("dut_fault"));
  w.golden_fault = FaultFromJson(j.at("golden_fault"));
  return w;
}

std::string FormatDouble(double v, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

int ModeRank(const std::string& mode) {
  if (mode == "fuce") return 0;
  if (mode == "fuzz") return 1;
  if (mode == "concolic") return 2;
  return 3;
}

constexpr const char* kMissing = "\xE2\x80\x94";  // U+2014, marks empty cells

std::vector<std::string> Cells(const ComparisonRow& r) {
  return {r.benchmark,
          r.mode,
          r.tests_generated ? std::to_string(*r.tests_generated) : kMissing,
          r.wall_seconds ? FormatDouble(*r.wall_seconds, 3) : kMissing,
          r.coverage_pct ? FormatDouble(*r.coverage_pct, 2) : kMissing,
          r.detected ? (*r.detected ? "yes" : "no") : kMissing,
          r.outcome.empty() ? kMissing : r.outcome};
}

const std::vector<std::string> kHeader = {
    "benchmark", "mode", "tests_generated", "wall_seconds", "coverage_pct",
    "detected", "outcome"};

size_t DisplayWidth(const std::string& s) {
  size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

}  // namespace

json WitnessToJson(const Witness& w) {
  return {{"test_id", w.test_id ? json(*w.test_id) : json(nullptr)},
          {"test", w.test},
          {"divergence_index", w.divergence_index},
          {"dut_value", OptWord(w.dut_value)},
          {"golden_value", OptWord(w.golden_value)},
          {"dut_trace", w.dut_trace.values},
          {"golden_trace", w.golden_trace.values},
          {"dut_fault", FaultJson(w.dut_fault)},
          {"golden_fault", FaultJson(w.golden_fault)}};
}

json ReportToJson(const CampaignReport& r) {
  const CampaignConfig& c = r.config;
  json j;
  j["schema"] = kReportSchema;
  j["design"] = r.design;
  j["config"] = {{"time_cutoff", c.time_cutoff},
                 {"time_threshold", c.time_threshold},
                 {"time_budget", c.time_budget},
                 {"rng_seed", c.rng_seed},
                 {"goal", GoalName(c.goal)},
                 {"mode", ModeName(c.mode)},
                 {"step_limit", c.step_limit},
                 {"k_base", c.k_base},
                 {"k_max", c.k_max},
                 {"design_literals", c.design_literals},
                 {"virtual_clock", c.virtual_clock}};
  j["seed_count"] = r.seed_count;
  json phases = json::array();
  for (const PhaseRow& p : r.phases) {
    phases.push_back({{"phase", p.phase.ToString()},
                      {"tests_generated", p.tests_generated},
                      {"start_seconds", p.start_seconds},
                      {"wall_seconds", p.wall_seconds}});
  }
  j["phases"] = phases;
  j["final"] = {
      {"branch_coverage_pct", r.branch_coverage_pct},
      {"incremental_coverage_pct", r.incremental_coverage_pct},
      {"covered_edges", r.covered_edges},
      {"total_edges", r.total_edges},
      {"detected", r.detected},
      {"witness", r.witness ? WitnessToJson(*r.witness) : json(nullptr)},
      {"detected_at",
       r.detected_at ? json(*r.detected_at) : json(nullptr)},
      {"total_tests", r.total_tests},
      {"executions", r.executions},
      {"total_seconds", r.total_seconds},
      {"outcome", r.outcome}};
  json timeline = json::array();
  for (const TimelineSample& s : r.timeline) {
    timeline.push_back({{"t_seconds", s.t_seconds},
                        {"coverage_pct", s.coverage_pct},
                        {"phase", s.phase}});
  }
  j["timeline"] = timeline;
  j["concolic"] = {{"tests_emitted", r.concolic.tests_emitted},
                   {"budget_exhausted", r.concolic.budget_exhausted},
                   {"stopped", r.concolic.stopped},
                   {"sat", r.concolic.sat},
                   {"unsat", r.concolic.unsat},
                   {"unknown", r.concolic.unknown},
                   {"replay_failures", r.concolic.replay_failures}};
  json emissions = json::array();
  for (const ConcolicEmission& e : r.emissions) {
    emissions.push_back(
        {{"queue_id", e.queue_id ? json(*e.queue_id) : json(nullptr)},
         {"words", e.words},
         {"target",
          {{"branch", e.target.branch},
           {"occurrence", e.target.occurrence},
           {"polarity", e.target.polarity == Polarity::kTrue ? "T" : "F"}}},
         {"phase", e.phase}});
  }
  j["emissions"] = emissions;
  j["timestamps"] = {{"started_at", r.started_at},
                     {"finished_at", r.finished_at}};
  return j;
}

CampaignReport ReportFromJson(const json& j) {
  int schema = j.at("schema").get<int>();
  if (schema < 1 || schema > kReportSchema) {
    throw std::invalid_argument("unsupported report schema " +
                                std::to_string(schema));
  }
  CampaignReport r;
  r.design = j.at("design").get<std::string>();
  const json& c = j.at("config");
  r.config.time_cutoff = c.at("time_cutoff").get<double>();
  r.config.time_threshold = c.at("time_threshold").get<double>();
  r.config.time_budget = c.at("time_budget").get<double>();
  r.config.rng_seed = c.at("rng_seed").get<uint64_t>();
  r.config.goal = ParseGoal(c.at("goal").get<std::string>()).value();
  r.config.mode = ParseMode(c.at("mode").get<std::string>()).value();
  r.config.step_limit = c.at("step_limit").get<uint64_t>();
  r.config.k_base = c.at("k_base").get<uint32_t>();
  r.config.k_max = c.at("k_max").get<uint32_t>();
  r.config.design_literals = c.at("design_literals").get<bool>();
  r.config.virtual_clock = c.at("virtual_clock").get<bool>();
  r.seed_count = j.at("seed_count").get<uint64_t>();
  for (const json& p : j.at("phases")) {
    r.phases.push_back({ParsePhase(p.at("phase").get<std::string>()),
                        p.at("tests_generated").get<uint64_t>(),
                        p.at("start_seconds").get<double>(),
                        p.at("wall_seconds").get<double>()});
  }
  const json& f = j.at("final");
  r.branch_coverage_pct = f.at("branch_coverage_pct").get<double>();
  r.incremental_coverage_pct = f.at("incremental_coverage_pct").get<double>();
  r.covered_edges = f.at("covered_edges").get<size_t>();
  r.total_edges = f.at("total_edges").get<size_t>();
  r.detected = f.at("detected").get<bool>();
  if (!f.at("witness").is_null()) r.witness = WitnessFromJson(f.at("witness"));
  if (!f.at("detected_at").is_null()) {
    r.detected_at = f.at("detected_at").get<double>();
  }
  r.total_tests = f.at("total_tests").get<uint64_t>();
  r.executions = f.at("executions").get<uint64_t>();
  r.total_seconds = f.at("total_seconds").get<double>();
  r.outcome = f.at("outcome").get<std::string>();
  for (const json& s : j.at("timeline")) {
    r.timeline.push_back({s.at("t_seconds").get<double>(),
                          s.at("coverage_pct").get<double>(),
                          s.at("phase").get<std::string>()});
  }
  const json& k = j.at("concolic");
  r.concolic.tests_emitted = k.at("tests_emitted").get<uint64_t>();
  r.concolic.budget_exhausted = k.at("budget_exhausted").get<bool>();
  r.concolic.stopped = k.at("stopped").get<bool>();
  r.concolic.sat = k.at("sat").get<uint64_t>();
  r.concolic.unsat = k.at("unsat").get<uint64_t>();
  r.concolic.unknown = k.at("unknown").get<uint64_t>();
  r.concolic.replay_failures = k.at("replay_failures").get<uint64_t>();
  for (const json& e : j.at("emissions")) {
    ConcolicEmission em;
    if (!e.at("queue_id").is_null()) {
      em.queue_id = e.at("queue_id").get<uint64_t>();
    }
    em.words = e.at("words").get<std::vector<Word>>();
    const json& t = e.at("target");
    em.target.branch = t.at("branch").get<BranchId>();
    em.target.occurrence = t.at("occurrence").get<uint32_t>();
    em.target.polarity = t.at("polarity").get<std::string>() == "T"
                             ? Polarity::kTrue
                             : Polarity::kFalse;
    em.phase = e.at("phase").get<std::string>();
    r.emissions.push_back(std::move(em));
  }
  if (j.contains("timestamps")) {
    r.started_at = j["timestamps"].value("started_at", "");
    r.finished_at = j["timestamps"].value("finished_at", "");
  }
  return r;
}

void EmitReport(const CampaignReport& report,
                const std::filesystem::path& path) {
  WriteFileAtomic(path, ReportToJson(report).dump(2) + "\n");
}

std::string TimelineCsv(const CampaignReport& report) {
  std::ostringstream os;
  os << "t_seconds,coverage_pct,phase\n";
  os << std::setprecision(17);
  for (const TimelineSample& s : report.timeline) {
    os << s.t_seconds << "," << s.coverage_pct << "," << s.phase << "\n";
  }
  return os.str();
}

ComparisonTable BuildComparison(const std::vector<NamedReport>& reports) {
  std::map<std::pair<std::string, int>, const CampaignReport*> cells;
  std::set<std::string> benchmarks;
  std::set<int> modes;
  for (const NamedReport& nr : reports) {
    int mode = ModeRank(std::string(ModeName(nr.report.config.mode)));
    if (!cells.emplace(std::make_pair(nr.benchmark, mode), &nr.report)
             .second) {
      throw std::invalid_argument("duplicate comparison cell: " +
                                  nr.benchmark + "/" +
                                  std::string(ModeName(nr.report.config.mode)));
    }
    benchmarks.insert(nr.benchmark);
    modes.insert(mode);
  }
  ComparisonTable table;
  for (const std::string& b : benchmarks) {
    for (int m : modes) {
      ComparisonRow row;
      row.benchmark = b;
      row.mode = std::string(ModeName(static_cast<Mode>(m)));
      auto it = cells.find({b, m});
      if (it != cells.end()) {
        const CampaignReport& r = *it->second;
        row.tests_generated = r.total_tests;
        row.wall_seconds = std::max(0.0, r.total_seconds);
        row.coverage_pct = r.branch_coverage_pct;
        row.detected = r.detected;
        row.outcome = r.outcome;
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::string ComparisonTable::ToCsv() const {
  std::ostringstream os;
  for (size_t i = 0; i < kHeader.size(); ++i) {
    os << (i ? "," : "") << kHeader[i];
  }
  os << "\n";
  for (const ComparisonRow& r : rows) {
    auto cells = Cells(r);
    for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  }
  return os.str();
}

std::string ComparisonTable::ToText() const {
  std::vector<std::vector<std::string>> grid{kHeader};
  for (const ComparisonRow& r : rows) grid.push_back(Cells(r));
  std::vector<size_t> width(kHeader.size(), 0);
  for (const auto& row : grid) {
    for (size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], DisplayWidth(row[i]));
    }
  }
  std::ostringstream os;
  for (const auto& row : grid) {
    for (size_t i = 0; i < row.size(); ++i) {
      os << row[i];
      if (i + 1 < row.size()) {
        os << std::string(width[i] - DisplayWidth(row[i]) + 2, ' ');
      }
    }
    os << "\n";
  }
  return os.str();
}

void WriteTestCase(std::span<const Word> words,
                   const std::filesystem::path& path) {
  std::string bytes;
  bytes.reserve(words.size() * 4);
  for (Word w : words) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>(w >> (8 * i)));
  }
  WriteFileAtomic(path, bytes);
}

std::vector<Word> ReadTestCase(const std::filesystem::path& path) {
  std::string bytes = ReadFile(path);
  if (bytes.size() % 4 != 0) {
    throw IoError(path, "test case length is not a multiple of 4 bytes");
  }
  std::vector<Word> words(bytes.size() / 4);
  for (size_t i = 0; i < words.size(); ++i) {
    Word w = 0;
    for (int b = 0; b < 4; ++b) {
      w |= static_cast<Word>(static_cast<unsigned char>(bytes[4 * i + b]))
           << (8 * b);
    }
    words[i] = w;
  }
  return words;
}

std::vector<Word> LoadTestFile(const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    try {
      return json::parse(ReadFile(path)).at("words").get<std::vector<Word>>();
    } catch (const json::exception& e) {
      throw IoError(path, e.what());
    }
  }
  return ReadTestCase(path);
}

std::vector<TestCase> LoadSeedDir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError(dir, "not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".tc" || ext == ".json")) {
      files.push_back(e.path());
    }
  }
  // A .json next to a .tc of the same stem is a queue metrics sidecar.
  std::erase_if(files, [](const std::filesystem::path& p) {
    if (p.extension() != ".json") return false;
    std::filesystem::path tc = p;
    tc.replace_extension(".tc");
    return std::filesystem::exists(tc);
  });
  std::sort(files.begin(), files.end());
  std::vector<TestCase> out;
  for (const auto& f : files) {
    TestCase t;
    t.words = LoadTestFile(f);
    out.push_back(std::move(t));
  }
  return out;
}

void PersistQueue(const FuzzQueue& queue, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir, ec.message());
  for (const QueueEntry& e : queue.entries()) {
    std::string stem = "id_" + std::to_string(e.id) + ",src_" +
                       std::string(OriginName(e.test.origin)) + ",phase_" +
                       std::to_string(e.test.phase.index);
    WriteTestCase(e.test.words, dir / (stem + ".tc"));
    json side = {{"id", e.id},
                 {"origin", OriginName(e.test.origin)},
                 {"phase", e.test.phase.ToString()},
                 {"parent", e.test.parent ? json(*e.test.parent)
                                          : json(nullptr)},
                 {"exec_steps", e.metrics.exec_steps},
                 {"bitmap_size", e.metrics.bitmap_size},
                 {"depth", e.metrics.depth},
                 {"found_at", e.found_at}};
    WriteFileAtomic(dir / (stem + ".json"), side.dump(2) + "\n");
  }
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp, "cannot open for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError(tmp, "write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError(path, "rename failed: " + ec.message());
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace fuce
