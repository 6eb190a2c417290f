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

#include "fuce/corpus.h"

#include <regex>
#include <sstream>

#include "fuce/executor.h"

namespace fuce {
namespace {

// Line markers: `//T` DUT only, `//TRIG` DUT only and holds the trigger
// condition, `//G` golden only.
constexpr std::string_view kMotivating = R"(design motivating_controller {
  inputs 2;
  stateA = in[0];
  stateB = in[1];
  switchA = 0;
  cycle = 0;
  cmd = 0;
  if (stateA == 23978 and stateB == 5678) {
    horizon = next_input();
    while (cycle < horizon) {
      if (switchA == 0) {
        tmp = stateA;
        stateA = stateB;
        stateB = tmp;
        switchA = 1;
      } else if (switchA == 1) {
        stateA = stateA + (cmd & 15);
        stateB = stateB - (cmd & 15);
        if (stateA > 6000 and stateB < 23600) {
          switchA = 0;
        }
      }
      output(stateA);
      output(stateB);
      cmd = next_input();
      if (cycle >= {THRESHOLD}) {  //TRIG
        switchA = 0;  //T
        tmp = stateA;  //T
        stateA = stateB;  //T
        stateB = tmp;  //T
      }  //T
      cycle = cycle + 1;
    }
    output(stateA);
  }
  output(cycle);
}
)";

constexpr std::string_view kFilter = R"(design fir_filter {
  inputs 4;
  x0 = in[0];
  x1 = in[1];
  x2 = in[2];
  x3 = in[3];
  sop = 3 * x0 + 5 * x1 + 7 * x2 + 11 * x3;
  y = sop >> 4;
  if (y > 1000000) {
    y = 1000000;
  }
  if (sop == 0xAAAAAAAA) {  //TRIG
    y = y ^ 255;  //T
  }  //T
  output(y);
}
)";

constexpr std::string_view kCipher = R"(design toy_cipher {
  inputs 2;
  key = in[0];
  n = in[1] & 7;
  state = key ^ 0x5A5A5A5A;
  i = 0;
  while (i < n) {
    p = next_input();
    c = (p ^ state) * 2654435761;
    c = c ^ (c >> 15);
    if ((c & 1) == 1) {
      state = state + c;
    } else {
      state = state ^ (c << 3);
    }
    output(c);
    if (p == 0xDEADBEEF) {  //TRIG
      output(key);  //T
    }  //T
    i = i + 1;
  }
}
)";

constexpr std::string_view kSort = R"(design bubble_sort4 {
  inputs 4;
  a0 = in[0];
  a1 = in[1];
  a2 = in[2];
  a3 = in[3];
  swaps = 0;
  if (a0 > a1) {
    t = a0;
    a0 = a1;
    a1 = t;
    swaps = swaps + 1;
  }
  if (a1 > a2) {
    t = a1;
    a1 = a2;
    a2 = t;
    swaps = swaps + 1;
  }
  if (a2 > a3) {
    t = a2;
    a2 = a3;
    a3 = t;
    swaps = swaps + 1;
  }
  if (a0 > a1) {
    t = a0;
    a0 = a1;
    a1 = t;
    swaps = swaps + 1;
  }
  if (a1 > a2) {
    t = a1;
    a1 = a2;
    a2 = t;
    swaps = swaps + 1;
  }
  if (a0 > a1) {
    t = a0;
    a0 = a1;
    a1 = t;
    swaps = swaps + 1;
  }
  if (swaps == 5) {  //TRIG
    a3 = a0;  //T
  }  //T
  output(a0);
  output(a1);
  output(a2);
  output(a3);
}
)";

constexpr std::string_view kBatchSort = R"(design batch_sort {
  inputs 1;
  batches = in[0] & 7;
  b = 0;
  dups = 0;  //T
  corrupt = 0;  //T
  while (b < batches) {
    a0 = next_input();
    a1 = next_input();
    a2 = next_input();
    if (a0 > a1) {
      t = a0;
      a0 = a1;
      a1 = t;
    }
    if (a1 > a2) {
      t = a1;
      a1 = a2;
      a2 = t;
    }
    if (a0 > a1) {
      t = a0;
      a0 = a1;
      a1 = t;
    }
    if (a0 == a2 and a2 == 0xBEEF) {  //T
      dups = dups + 1;  //T
    }  //T
    if (dups == 2) {  //TRIG
      corrupt = 1;  //T
    }  //T
    output(a0 ^ (corrupt << 31));  //T
    output(a0);  //G
    output(a1);
    output(a2);
    b = b + 1;
  }
}
)";

constexpr std::string_view kCodec = R"(design adpcm_codec {
  inputs 1;
  n = in[0] & 255;
  pred = 0;
  step = 16;
  count = 0;
  corrupt = 0;  //T
  while (count < n) {
    s = next_input() & 65535;
    if (s >= pred) {
      d = s - pred;
      sign = 8;
    } else {
      d = pred - s;
      sign = 0;
    }
    code = 0;
    if (d >= step) {
      code = 4;
      d = d - step;
    }
    if (d >= (step >> 1)) {
      code = code | 2;
      d = d - (step >> 1);
    }
    if (d >= (step >> 2)) {
      code = code | 1;
    }
    delta = (step * code) >> 2;
    if (sign == 8) {
      pred = pred + delta;
    } else {
      pred = pred - delta;
    }
    pred = pred & 65535;
    if (code >= 4) {
      if (step < 2048) {
        step = step * 2;
      }
    } else if (step > 16) {
      step = step >> 1;
    }
    if (count == 250) {  //TRIG
      corrupt = 1;  //T
    }  //T
    output((code | sign) ^ (corrupt * 3));  //T
    output(code | sign);  //G
    count = count + 1;
  }
}
)";

constexpr std::string_view kControl = R"(design checksum {
  inputs 2;
  n = in[0] & 15;
  acc = in[1];
  i = 0;
  while (i < n) {
    v = next_input();
    if (v > acc) {
      acc = acc + v;
    } else {
      acc = acc ^ v;
    }
    if ((acc & 3) == 0) {
      acc = acc >> 1;
    }
    output(acc);
    i = i + 1;
  }
  output(acc);
}
)";

Word InverseOdd(Word c) {
  Word x = c;
  for (int i = 0; i < 5; ++i) x *= 2 - c * x;
  return x;
}

std::string Replace(std::string_view text, std::string_view key,
                    const std::string& value) {
  std::string out(text);
  for (size_t pos = out.find(key); pos != std::string::npos;
       pos = out.find(key, pos + value.size())) {
    out.replace(pos, key.size(), value);
  }
  return out;
}

// Branch ids whose `if`/`while` keyword sits on a //TRIG line. Relies on
// branch ids following textual keyword order, which holds for designs
// without ternaries.
std::vector<BranchId> TriggerBranches(std::string_view text) {
  static const std::regex kKeyword(R"(\b(if|while)\s*\()");
  std::vector<BranchId> out;
  BranchId next = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    bool trig = line.find("//TRIG") != std::string::npos;
    if (line.find("//G") != std::string::npos) continue;
    std::string code = line.substr(0, line.find("//"));
    for (auto it = std::sregex_iterator(code.begin(), code.end(), kKeyword);
         it != std::sregex_iterator(); ++it) {
      if (trig) out.push_back(next);
      ++next;
    }
  }
  return out;
}

BenchmarkEntry Make(std::string_view name, std::string_view text,
                    TrojanType type, std::string note,
                    std::vector<std::vector<Word>> triggers,
                    uint64_t step_limit = kDefaultStepLimit) {
  BenchmarkEntry e;
  e.name = name;
  auto [dut, golden] = SplitTemplate(text);
  e.dut_source = dut;
  e.golden_source = golden;
  e.dut = ParseDesign(dut);
  e.golden = GoldenModel::FromDesign(ParseDesign(golden));
  e.trojan_type = type;
  e.severity = SeverityOf(type);
  e.trigger_note = std::move(note);
  e.step_limit = step_limit;
  e.trojan_branches = TriggerBranches(text);
  e.trigger_tests = std::move(triggers);
  return e;
}

}  // namespace

std::string_view TrojanTypeName(TrojanType t) {
  switch (t) {
    case TrojanType::kCWOM: return "CWOM";
    case TrojanType::kCWM: return "CWM";
    case TrojanType::kSWOM: return "SWOM";
    case TrojanType::kSWM: return "SWM";
    case TrojanType::kNone: return "none";
  }
  return "none";
}

std::string_view SeverityName(Severity s) {
  switch (s) {
    case Severity::kLow: return "low";
    case Severity::kHigh: return "high";
    case Severity::kNone: return "none";
  }
  return "none";
}

Severity SeverityOf(TrojanType t) {
  switch (t) {
    case TrojanType::kCWM:
    case TrojanType::kSWM:
      return Severity::kHigh;
    case TrojanType::kCWOM:
    case TrojanType::kSWOM:
      return Severity::kLow;
    case TrojanType::kNone:
      return Severity::kNone;
  }
  return Severity::kNone;
}

std::pair<std::string, std::string> SplitTemplate(std::string_view text) {
  std::string dut, golden;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    size_t mark = line.find("//");
    std::string tag;
    if (mark != std::string::npos) {
      tag = line.substr(mark + 2);
      if (tag == "T" || tag == "TRIG" || tag == "G") {
        line.erase(mark);
        while (!line.empty() && line.back() == ' ') line.pop_back();
      } else {
        tag.clear();
      }
    }
    if (tag != "G") dut += line + "\n";
    if (tag != "T" && tag != "TRIG") golden += line + "\n";
  }
  return {dut, golden};
}

std::vector<BenchmarkEntry> BuiltinSuite(const SuiteOptions& options) {
  const Word threshold = options.faithful ? (Word{1} << 20) - 1
                                          : (Word{1} << 12) - 1;
  std::vector<BenchmarkEntry> suite;

  {
    std::string text =
        Replace(kMotivating, "{THRESHOLD}", std::to_string(threshold));
    uint64_t limit = options.faithful ? 64'000'000 : kDefaultStepLimit;
    BenchmarkEntry e =
        Make("motivating_controller", text, TrojanType::kSWM,
             "guard stateA == 23978 and stateB == 5678, then the loop must "
             "run past the cycle threshold; payload keeps swapping state",
             {{23978, 5678, threshold + 10}}, limit);
    e.scale_params["cycle_threshold"] = threshold;
    suite.push_back(std::move(e));
  }
  suite.push_back(Make("fir_filter", kFilter, TrojanType::kCWOM,
                       "weighted input sum equal to 0xAAAAAAAA flips the "
                       "low output byte",
                       {{InverseOdd(3) * 0xAAAAAAAAu, 0, 0, 0}}));
  suite.push_back(Make("toy_cipher", kCipher, TrojanType::kCWOM,
                       "plaintext word 0xDEADBEEF leaks the key as an extra "
                       "output",
                       {{0x1234u, 1, 0xDEADBEEFu}}));
  suite.push_back(Make("bubble_sort4", kSort, TrojanType::kCWOM,
                       "exactly five compare-swaps corrupt the largest "
                       "output",
                       {{4, 3, 1, 2}}));
  suite.push_back(Make("batch_sort", kBatchSort, TrojanType::kSWM,
                       "second batch of three 0xBEEF words sets a sticky "
                       "flag that corrupts every later output",
                       {{3, 0xBEEF, 0xBEEF, 0xBEEF, 0xBEEF, 0xBEEF, 0xBEEF,
                         9, 1, 4}}));
  suite.push_back(Make("adpcm_codec", kCodec, TrojanType::kSWM,
                       "sample counter reaching 250 sets a sticky flag "
                       "that flips code bits",
                       {{255}}));
  suite.push_back(Make("checksum", kControl, TrojanType::kNone,
                       "trojan-free control", {}));
  return suite;
}

bool FiresTrigger(const BenchmarkEntry& entry, std::span<const Word> words) {
  if (entry.trojan_branches.empty()) return false;
  ExecutionTrace t = Execute(entry.dut, words, entry.step_limit);
  for (const Decision& d : t.decisions) {
    if (d.polarity != Polarity::kTrue) continue;
    for (BranchId b : entry.trojan_branches) {
      if (d.branch == b) return true;
    }
  }
  return false;
}

std::vector<TestCase> RandomSeeds(const Design& design, size_t count,
                                  size_t extra_words, std::mt19937_64& rng) {
  std::vector<TestCase> out;
  for (size_t i = 0; i < count; ++i) {
    TestCase t;
    t.words.resize(design.input_arity + extra_words);
    for (Word& w : t.words) w = static_cast<Word>(rng() % 256);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace fuce
