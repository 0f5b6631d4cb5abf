#pragma once

#include <cstdint>
#include <stdexcept>

#include "seatalloc/common.hpp"
#include "seatalloc/validate.hpp"

namespace seatalloc {

struct InfeasibleParamsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Random-instance parameters. Counts are upper bounds where "up to" is noted;
// the generator draws uniformly unless stated otherwise.
struct GenParams {
  std::uint32_t candidates = 6;
  std::uint32_t courses = 4;       // courses, spread round-robin over lists
  std::uint32_t lists = 2;         // merit lists
  std::uint32_t min_capacity = 0;  // per-pool capacity drawn from [min, max]
  std::uint32_t max_capacity = 3;
  std::uint32_t max_prefs = 4;     // course preferences per candidate, up to
  double list_membership = 0.9;    // chance a candidate enters each list
  bool reservations = false;       // add reserved-category pools + categories
  std::uint32_t max_categories = 2;  // top-level categories when reserved
  double nested_chance = 0.3;        // chance a category gets a child
  bool quotas = false;               // female quotas on some courses
  std::uint32_t max_quota = 2;
  double female_share = 0.5;
  double quota_course_share = 0.6;  // fraction of courses given a quota
  double mean_prefs = 0.0;          // >0: geometric-ish length with this mean
};

// Produces raw tables that always pass validation (membership in governing
// lists is patched up after the random draw). Throws InfeasibleParamsError on
// contradictory parameters (courses without lists, min > max bounds).
RawTables generate_tables(const GenParams& params, Rng& rng);

}  // namespace seatalloc
