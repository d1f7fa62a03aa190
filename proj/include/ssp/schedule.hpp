#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssp {

class NotAStageEnd : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which stage-length recurrence a schedule follows.
///
/// kLcb: e_1 = H, e_{j+1} = floor((1 + 1/H) e_j).
/// kSvi: e_j = floor(x_j) with x_1 = 1, x_{j+1} = x_j + e_j / H.
enum class ScheduleFamily { kLcb, kSvi };

std::string to_string(ScheduleFamily family);
ScheduleFamily schedule_family_from_string(const std::string& name);

/// Stage lengths e_j and stage ends E_j = e_1 + ... + e_j, enumerated lazily
/// with exact integer arithmetic. A pair visited n times is updated exactly
/// when n is a stage end.
class StageSchedule {
 public:
  StageSchedule(ScheduleFamily family, std::uint64_t horizon);

  ScheduleFamily family() const { return family_; }
  std::uint64_t horizon() const { return horizon_; }

  /// e_j and E_j for j >= 1. Grows the cache as needed.
  std::uint64_t stage_length(std::size_t j);
  std::uint64_t stage_end(std::size_t j);

  bool is_stage_end(std::uint64_t n);
  /// Number of stage ends E_j <= n.
  std::uint64_t stage_end_count(std::uint64_t n);
  /// e_j for the j with E_j == n; throws NotAStageEnd otherwise.
  std::uint64_t last_stage_length(std::uint64_t n);

  /// For the svi family: x_j in units of 1/H (so x_j = units / H exactly).
  std::uint64_t fractional_units(std::size_t j);

 private:
  void grow_to_index(std::size_t j);
  void grow_past(std::uint64_t n);
  void push_next();

  ScheduleFamily family_;
  std::uint64_t horizon_;
  std::vector<std::uint64_t> lengths_;
  std::vector<std::uint64_t> ends_;
  std::vector<std::uint64_t> units_;  // svi only
};

/// Per-pair monotone pointer into a shared schedule. Feeding it visit counts
/// 1, 2, 3, ... answers "is this a stage end" in amortized O(1).
class ScheduleCursor {
 public:
  /// `n` must be the previous call's n plus one (starting at 1).
  bool advance(StageSchedule& schedule, std::uint64_t n) {
    if (n != schedule.stage_end(next_ + 1)) return false;
    ++next_;
    return true;
  }
  /// Stage ends passed so far.
  std::size_t stages_completed() const { return next_; }

 private:
  std::size_t next_ = 0;
};

}  // namespace ssp
