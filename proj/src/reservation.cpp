#include "seatalloc/reservation.hpp"

#include "seatalloc/state.hpp"

namespace seatalloc {

std::vector<PoolId> expand_preferences(const Candidate& cand, const Instance& inst) {
  std::vector<PoolId> out;
  out.reserve(cand.raw_prefs.size());
  for (CourseId j : cand.raw_prefs) {
    const Course& course = inst.courses[j];
    out.push_back(course.unreserved);
    // cand.categories is closed upward and sorted outermost-first, so the
    // block order falls out of a single filtered walk.
    for (CategoryId g : cand.categories) {
      for (PoolId p : course.pools) {
        if (inst.pools[p].category == g) {
          out.push_back(p);
          break;
        }
      }
    }
    if (inst.quotas_enabled && cand.female && course.female_sup != kNone)
      out.push_back(course.female_sup);
  }
  return out;
}

std::uint32_t female_occupants(const AllocationState& st, CourseId course) {
  std::uint32_t x = 0;
  for (PoolId p : st.inst->courses[course].pools)
    for (CandidateId c : st.pools[p].occupants)
      if (st.inst->candidates[c].female) ++x;
  return x;
}

namespace {

void add_sup_seats(AllocationState& st, CourseId j, std::uint32_t want_created) {
  const Course& course = st.inst->courses[j];
  PoolId sup = course.female_sup;
  // Capacity only grows (created seats are never retracted) and the total
  // ever created stays within the desired count y.
  while (st.created_sup[j] < want_created && st.created_sup[j] < course.female_quota) {
    ++st.created_sup[j];
    ++st.supcreated;
    ++st.pools[sup].capacity;
    st.emit(EventKind::SupCreate, kNone, sup, kNone, st.pools[sup].capacity);
    st.charge();
  }
  if (st.pools[sup].occupancy < st.pools[sup].capacity) st.push_vacancy(sup);
}

}  // namespace

void note_pool_filled(AllocationState& st, PoolId pool) {
  const Instance& inst = *st.inst;
  if (!inst.quotas_enabled) return;
  CourseId j = inst.pools[pool].course;
  const Course& course = inst.courses[j];
  // The trigger is the unreserved pool reaching capacity — the reading of
  // "course gets filled" that needs no cross-category bookkeeping.
  if (course.female_sup == kNone || pool != course.unreserved) return;
  if (st.pools[pool].occupancy < st.pools[pool].capacity) return;
  st.fill_seen[j] = 1;
  std::uint32_t x = female_occupants(st, j);
  std::uint32_t want = course.female_quota > x ? course.female_quota - x : 0;
  add_sup_seats(st, j, want);
}

void note_vacate(AllocationState& st, PoolId pool, CandidateId cand) {
  const Instance& inst = *st.inst;
  if (!inst.quotas_enabled) return;
  const SeatPool& sp = inst.pools[pool];
  if (sp.female_only) return;  // only gender-neutral departures count
  CourseId j = sp.course;
  const Course& course = inst.courses[j];
  if (course.female_sup == kNone || !st.fill_seen[j]) return;
  if (!inst.candidates[cand].female) return;
  add_sup_seats(st, j, st.created_sup[j] + 1);
}

}  // namespace seatalloc
