#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ssp/schedule.hpp"

using namespace ssp;

TEST_CASE("lcb schedule ends for H = 2") {
  StageSchedule lcb(ScheduleFamily::kLcb, 2);
  const std::vector<std::uint64_t> expected{2, 5, 9, 15, 24};
  for (std::size_t j = 1; j <= expected.size(); ++j) CHECK(lcb.stage_end(j) == expected[j - 1]);
  CHECK(lcb.is_stage_end(9));
  CHECK_FALSE(lcb.is_stage_end(10));
  CHECK(lcb.stage_end_count(24) == 5);
  CHECK(lcb.stage_end_count(23) == 4);
  CHECK(lcb.last_stage_length(5) == 3);
  CHECK_THROWS_AS(lcb.last_stage_length(6), NotAStageEnd);
}

TEST_CASE("lcb first stage has length H") {
  StageSchedule lcb(ScheduleFamily::kLcb, 5);
  CHECK(lcb.last_stage_length(5) == 5);
  CHECK_FALSE(lcb.is_stage_end(1));
}

TEST_CASE("svi schedule") {
  SUBCASE("first visit always ends a stage") {
    for (std::uint64_t H : {1u, 2u, 7u, 50u}) {
      StageSchedule svi(ScheduleFamily::kSvi, H);
      CHECK(svi.is_stage_end(1));
      CHECK(svi.last_stage_length(1) == 1);
    }
  }
  SUBCASE("H = 3 by hand") {
    StageSchedule svi(ScheduleFamily::kSvi, 3);
    const std::vector<std::uint64_t> lengths{1, 1, 1, 2, 2, 3};
    const std::vector<std::uint64_t> ends{1, 2, 3, 5, 7, 10};
    // x = 1, 4/3, 5/3, 2, 8/3, 10/3 in units of 1/3.
    const std::vector<std::uint64_t> units{3, 4, 5, 6, 8, 10};
    for (std::size_t j = 1; j <= 6; ++j) {
      CHECK(svi.stage_length(j) == lengths[j - 1]);
      CHECK(svi.stage_end(j) == ends[j - 1]);
      CHECK(svi.fractional_units(j) == units[j - 1]);
    }
  }
  SUBCASE("stage_end_count") {
    StageSchedule svi(ScheduleFamily::kSvi, 10);
    CHECK(svi.stage_end_count(10) == 10);
    const std::uint64_t count = svi.stage_end_count(1'000'000);
    CHECK(count == testing::svi_ends_oracle(10, 1'000'000).size());
    CHECK(static_cast<double>(count) <= 10.0 * std::log(1e6) + 10.0 + 1.0);
  }
}

TEST_CASE("schedules match the defining recurrences") {
  for (std::uint64_t H : {1u, 2u, 3u, 5u, 10u, 50u}) {
    const auto lcb_ref = testing::lcb_ends_oracle(H, 10'000'000);
    const auto svi_ref = testing::svi_ends_oracle(H, 1'000'000);
    StageSchedule lcb(ScheduleFamily::kLcb, H);
    StageSchedule svi(ScheduleFamily::kSvi, H);
    for (std::size_t j = 1; j <= lcb_ref.size(); ++j) REQUIRE(lcb.stage_end(j) == lcb_ref[j - 1]);
    for (std::size_t j = 1; j <= svi_ref.size(); ++j) REQUIRE(svi.stage_end(j) == svi_ref[j - 1]);
  }
}

TEST_CASE("lcb growth properties") {
  for (std::uint64_t H : {1u, 2u, 5u, 10u, 50u}) {
    StageSchedule lcb(ScheduleFamily::kLcb, H);
    std::uint64_t sum = 0;
    for (std::size_t j = 1; j <= 10'000; ++j) {
      std::uint64_t e_next = 0;
      try {
        e_next = lcb.stage_length(j + 1);
      } catch (const std::overflow_error&) {
        break;  // E_j no longer fits in 64 bits
      }
      const std::uint64_t e = lcb.stage_length(j);
      sum += e;
      REQUIRE(lcb.stage_end(j) == sum);
      REQUIRE(e >= 1);
      REQUIRE(e_next >= e);
      REQUIRE(static_cast<long double>(e_next) / e <= 1.0L + 1.0L / H);
    }
  }
}

TEST_CASE("svi structural properties") {
  for (std::uint64_t H : {1u, 2u, 5u, 10u, 50u}) {
    StageSchedule svi(ScheduleFamily::kSvi, H);
    for (std::size_t j = 1; j <= H; ++j) REQUIRE(svi.stage_length(j) == 1);
    std::uint64_t sum = 0;
    for (std::size_t j = 1; j <= 5000; ++j) {
      std::uint64_t e = 0;
      try {
        e = svi.stage_length(j);
      } catch (const std::overflow_error&) {
        break;
      }
      sum += e;
      REQUIRE(svi.stage_end(j) == sum);
      if (j > 1) REQUIRE(e >= svi.stage_length(j - 1));
      // 0 <= x_j - e_j < 1, in units of 1/H.
      const std::uint64_t units = svi.fractional_units(j);
      REQUIRE(units >= e * H);
      REQUIRE(units - e * H < H);
    }
  }
}

TEST_CASE("update count bound up to one million visits") {
  for (std::uint64_t H : {2u, 5u, 10u, 50u}) {
    for (ScheduleFamily family : {ScheduleFamily::kLcb, ScheduleFamily::kSvi}) {
      StageSchedule schedule(family, H);
      ScheduleCursor cursor;
      for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
        cursor.advance(schedule, n);
        const double bound = 3.0 * H * std::log(static_cast<double>(n) + 1.0) + H + 1.0;
        REQUIRE(static_cast<double>(cursor.stages_completed()) <= bound);
      }
      CHECK(cursor.stages_completed() == schedule.stage_end_count(1'000'000));
    }
  }
}

TEST_CASE("cursor agrees with is_stage_end on random horizons") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t H = 1 + gen() % 64;
    const auto family = trial % 2 == 0 ? ScheduleFamily::kLcb : ScheduleFamily::kSvi;
    StageSchedule schedule(family, H);
    StageSchedule reference(family, H);
    ScheduleCursor cursor;
    for (std::uint64_t n = 1; n <= 20'000; ++n) {
      const bool end = cursor.advance(schedule, n);
      REQUIRE(end == reference.is_stage_end(n));
      if (end) REQUIRE(reference.last_stage_length(n) >= 1);
    }
  }
}

TEST_CASE("invalid schedules") {
  CHECK_THROWS_AS(StageSchedule(ScheduleFamily::kLcb, 0), std::invalid_argument);
  CHECK_THROWS_AS(schedule_family_from_string("ucb"), std::invalid_argument);
  StageSchedule lcb(ScheduleFamily::kLcb, 3);
  CHECK_THROWS_AS(lcb.fractional_units(1), std::logic_error);
  CHECK_THROWS_AS(lcb.stage_end(0), std::out_of_range);
}
