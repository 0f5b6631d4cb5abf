#pragma once

#include <vector>

#include "seatalloc/instance.hpp"

namespace seatalloc {

struct AllocationState;

// Expands one candidate's raw course preferences into pool preferences.
//
// Preference i over course j becomes a block of consecutive pool entries: the
// unreserved pool of j first, then the pools of each category the candidate
// holds on j, outermost category first, innermost last, and finally — for
// female candidates on quota courses — the supernumerary pool. Unreserved
// before reserved lets a strong reserved-category candidate consume a general
// seat instead of a protected one; the supernumerary pool trails the whole
// block so a female candidate never lands a supernumerary seat while any
// gender-neutral seat of the same course is open. Relative order of distinct
// raw preferences is preserved; overall ranks are dense afterward.
std::vector<PoolId> expand_preferences(const Candidate& cand, const Instance& inst);

// Supernumerary hook: called when `pool` just transitioned to full. If it is
// the unreserved pool of a quota course, tops the course's supernumerary pool
// up to max(0, female_quota - female_occupants) extra seats (monotone, capped
// at female_quota). Newly opened seats push a vacancy for the sup pool.
void note_pool_filled(AllocationState& st, PoolId pool);

// Supernumerary hook: called when female candidate `cand` vacated `pool`. If
// the pool is gender-neutral, belongs to a quota course whose unreserved pool
// has filled at least once, and fewer than female_quota seats were created,
// adds one seat to the course's supernumerary pool.
void note_vacate(AllocationState& st, PoolId pool, CandidateId cand);

// Count of female candidates currently holding any seat of `course`.
std::uint32_t female_occupants(const AllocationState& st, CourseId course);

}  // namespace seatalloc
