#include "ssp/schedule.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ssp {

std::string to_string(ScheduleFamily family) {
  return family == ScheduleFamily::kLcb ? "lcb" : "svi";
}

ScheduleFamily schedule_family_from_string(const std::string& name) {
  if (name == "lcb") return ScheduleFamily::kLcb;
  if (name == "svi") return ScheduleFamily::kSvi;
  throw std::invalid_argument("unknown schedule family '" + name + "'");
}

StageSchedule::StageSchedule(ScheduleFamily family, std::uint64_t horizon)
    : family_(family), horizon_(horizon) {
  if (horizon == 0) throw std::invalid_argument("schedule horizon must be at least 1");
  push_next();
}

void StageSchedule::push_next() {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto checked_add = [](std::uint64_t a, std::uint64_t b) {
    if (b > kMax - a) throw std::overflow_error("stage end exceeds 64-bit range");
    return a + b;
  };
  std::uint64_t e = 0;
  std::uint64_t units = 0;
  if (family_ == ScheduleFamily::kLcb) {
    // floor((1 + 1/H) e) == e + floor(e / H) for integer e.
    e = lengths_.empty() ? horizon_ : checked_add(lengths_.back(), lengths_.back() / horizon_);
  } else {
    units = units_.empty() ? horizon_ : checked_add(units_.back(), lengths_.back());
    e = units / horizon_;
  }
  const std::uint64_t prev_end = ends_.empty() ? 0 : ends_.back();
  const std::uint64_t end = checked_add(prev_end, e);
  if (family_ == ScheduleFamily::kSvi) units_.push_back(units);
  lengths_.push_back(e);
  ends_.push_back(end);
}

void StageSchedule::grow_to_index(std::size_t j) {
  while (lengths_.size() < j) push_next();
}

void StageSchedule::grow_past(std::uint64_t n) {
  while (ends_.back() <= n) push_next();
}

std::uint64_t StageSchedule::stage_length(std::size_t j) {
  if (j == 0) throw std::out_of_range("stage index starts at 1");
  grow_to_index(j);
  return lengths_[j - 1];
}

std::uint64_t StageSchedule::stage_end(std::size_t j) {
  if (j == 0) throw std::out_of_range("stage index starts at 1");
  grow_to_index(j);
  return ends_[j - 1];
}

std::uint64_t StageSchedule::fractional_units(std::size_t j) {
  if (family_ != ScheduleFamily::kSvi) throw std::logic_error("only the svi family tracks x_j");
  grow_to_index(j);
  return units_.at(j - 1);
}

bool StageSchedule::is_stage_end(std::uint64_t n) {
  grow_past(n);
  return std::binary_search(ends_.begin(), ends_.end(), n);
}

std::uint64_t StageSchedule::stage_end_count(std::uint64_t n) {
  grow_past(n);
  return static_cast<std::uint64_t>(std::upper_bound(ends_.begin(), ends_.end(), n) - ends_.begin());
}

std::uint64_t StageSchedule::last_stage_length(std::uint64_t n) {
  grow_past(n);
  const auto it = std::lower_bound(ends_.begin(), ends_.end(), n);
  if (it == ends_.end() || *it != n) {
    throw NotAStageEnd(std::to_string(n) + " is not a stage end");
  }
  return lengths_[static_cast<std::size_t>(it - ends_.begin())];
}

}  // namespace ssp
