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

// Campaign time sources.
//
// WallClock measures real elapsed time. VirtualClock advances only when the
// engine charges work to it (interpreter steps, solver evaluations), which
// makes whole campaigns reproducible bit-for-bit.
#ifndef FUCE_CLOCK_H_
#define FUCE_CLOCK_H_

#include <chrono>
#include <cstdint>

namespace fuce {

class Clock {
 public:
  virtual ~Clock() = default;
  // Seconds since the clock was created.
  virtual double Now() const = 0;
  // Records `ticks` units of work. Ignored by wall clocks.
  virtual void Charge(uint64_t ticks) = 0;
  virtual bool is_virtual() const = 0;
};

class WallClock final : public Clock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}
  double Now() const override {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }
  void Charge(uint64_t) override {}
  bool is_virtual() const override { return false; }

 private:
  std::chrono::steady_clock::time_point start_;
};

// One virtual second is kTicksPerSecond units of charged work.
class VirtualClock final : public Clock {
 public:
  static constexpr uint64_t kTicksPerSecond = 1'000'000;

  double Now() const override {
    return static_cast<double>(ticks_) / static_cast<double>(kTicksPerSecond);
  }
  void Charge(uint64_t ticks) override { ticks_ += ticks; }
  bool is_virtual() const override { return true; }
  uint64_t ticks() const { return ticks_; }

 private:
  uint64_t ticks_ = 0;
};

// Work accounting used with the virtual clock.
inline constexpr uint64_t kExecOverheadTicks = 100;  // per design execution
inline constexpr uint64_t kShadowStepTicks = 4;      // per shadow step

inline uint64_t ExecTicks(uint64_t steps) { return kExecOverheadTicks + steps; }

}  // namespace fuce

#endif  // FUCE_CLOCK_H_
