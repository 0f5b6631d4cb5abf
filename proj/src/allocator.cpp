#include "seatalloc/allocator.hpp"

#include <numeric>
#include <stdexcept>

#include "seatalloc/reservation.hpp"

namespace seatalloc {

namespace {

// Moves `c` into `p` (pref rank `new_rank`), emitting the move event plus the
// Vacate for any released seat, then firing the supernumerary hooks and the
// vacancy push for the released pool. One elementary step.
void move_candidate(AllocationState& st, CandidateId c, PoolId p, std::uint32_t new_rank,
                    EventKind kind) {
  const std::uint32_t old_rank = st.cands[c].rank;
  const PoolId old_pool = st.cands[c].pool;
  st.charge();
  if (old_pool != kNone) st.release(c);
  st.occupy(c, p, new_rank);
  st.emit(kind, c, p, old_rank, new_rank);
  if (old_pool != kNone) st.emit(EventKind::Vacate, c, old_pool, old_rank, new_rank);
  if (st.pools[p].occupancy == st.pools[p].capacity) note_pool_filled(st, p);
  if (old_pool != kNone) {
    note_vacate(st, old_pool, c);
    st.push_vacancy(old_pool);
  }
}

// One-time init: a quota course whose unreserved pool has zero seats is full
// from the start, so its supernumerary top-up fires before any pass.
void prepare(AllocationState& st) {
  if (st.prepared) return;
  st.prepared = true;
  const Instance& inst = *st.inst;
  if (!inst.quotas_enabled) return;
  st.set_phase(StepTag::Step1, 0);
  for (CourseId j = 0; j < inst.courses.size(); ++j) {
    const Course& course = inst.courses[j];
    if (course.female_sup != kNone && st.pools[course.unreserved].capacity == 0)
      note_pool_filled(st, course.unreserved);
  }
  cascade_vacancies(st);  // queues are empty; this just clears the pushes
}

}  // namespace

void cascade_vacancies(AllocationState& st) {
  const StepTag saved = st.phase;
  const std::uint32_t saved_list = st.phase_list;
  st.set_phase(StepTag::Cascade, saved_list);
  for (PoolId p = st.pop_vacancy(); p != kNone; p = st.pop_vacancy()) {
    PoolState& ps = st.pools[p];
    while (ps.occupancy < ps.capacity && ps.head < ps.queue.size()) {
      const WaitEntry e = ps.queue[ps.head++];
      st.charge();  // queue entries are consumed exactly once
      const CandState& cs = st.cands[e.cand];
      st.emit(EventKind::Offer, e.cand, p, cs.rank, e.rank);
      if (cs.withdrawn || cs.rank <= e.rank) {
        st.emit(EventKind::Skip, e.cand, p, cs.rank, e.rank);
        continue;
      }
      move_candidate(st, e.cand, p, e.rank, EventKind::Accept);
    }
  }
  st.set_phase(saved, saved_list);
}

void run_pass(AllocationState& st, ListId t) {
  const Instance& inst = *st.inst;
  prepare(st);
  const bool opening = st.passes_done == 0;
  ++st.passes_done;
  st.set_phase(opening ? StepTag::Step1 : StepTag::Improve, t);
  std::uint64_t& scan_sum = opening ? st.sum_p : st.sum_q;

  for (CandidateId c : inst.views[t].scan_order) {
    if (st.cands[c].withdrawn) continue;
    const std::uint32_t current = st.cands[c].rank;  // kNone compares as worst
    for (const Instance::ViewSlot& slot : inst.view(t, c)) {
      if (slot.overall_rank >= current) break;  // rest of the view is worse
      ++scan_sum;
      st.charge();
      const PoolState& ps = st.pools[slot.pool];
      if (ps.occupancy >= ps.capacity) {
        st.enqueue(slot.pool, c, slot.overall_rank);
        st.charge();
        st.emit(EventKind::Enqueue, c, slot.pool, current, slot.overall_rank);
      } else {
        move_candidate(st, c, slot.pool, slot.overall_rank, EventKind::Allot);
        break;
      }
    }
    // Seats freed by this candidate's move (or opened by a supernumerary
    // top-up) are re-offered before the next candidate is examined.
    if (st.has_vacancies()) cascade_vacancies(st);
  }
}

void allocate_joint(AllocationState& st, const std::vector<ListId>& lists_order) {
  const std::size_t k = st.inst->list_count();
  std::vector<std::uint8_t> seen(k, 0);
  if (lists_order.size() != k)
    throw std::invalid_argument("lists_order must name every merit list exactly once");
  for (ListId t : lists_order) {
    if (t >= k || seen[t])
      throw std::invalid_argument("lists_order must be a permutation of the merit lists");
    seen[t] = 1;
  }
  prepare(st);
  for (ListId t : lists_order) run_pass(st, t);
#ifndef NDEBUG
  audit_consistency(*st.inst, st);
#endif
}

void allocate_joint(AllocationState& st) {
  std::vector<ListId> order(st.inst->list_count());
  std::iota(order.begin(), order.end(), 0);
  allocate_joint(st, order);
}

void withdraw(AllocationState& st, CandidateId cand) {
  if (cand >= st.cands.size())
    throw WithdrawError(WithdrawError::Reason::UnknownCandidate,
                        "unknown candidate id " + std::to_string(cand));
  CandState& cs = st.cands[cand];
  if (cs.withdrawn)
    throw WithdrawError(WithdrawError::Reason::AlreadyWithdrawn,
                        "candidate " + st.inst->candidates[cand].name + " already withdrew");
  prepare(st);
  st.set_phase(StepTag::Withdraw, 0);
  cs.withdrawn = true;
  ++st.withdrawals;
  st.charge();
  const std::uint32_t old_rank = cs.rank;
  const PoolId old_pool = cs.pool;
  st.emit(EventKind::Withdraw, cand, old_pool, old_rank, kNone);
  if (old_pool != kNone) {
    st.release(cand);
    st.emit(EventKind::Vacate, cand, old_pool, old_rank, kNone);
    note_vacate(st, old_pool, cand);
    st.push_vacancy(old_pool);
    cascade_vacancies(st);
  }
}

AllotmentResult snapshot(const AllocationState& st) {
  AllotmentResult r;
  r.rank.resize(st.cands.size());
  r.pool.resize(st.cands.size());
  for (std::size_t c = 0; c < st.cands.size(); ++c) {
    r.rank[c] = st.cands[c].rank;
    r.pool[c] = st.cands[c].pool;
  }
  r.op_counter = st.op_counter;
  r.sum_p = st.sum_p;
  r.sum_q = st.sum_q;
  return r;
}

AllotmentResult allocate_single_list(const Instance& inst, ListId list) {
  AllotmentResult r;
  r.rank.assign(inst.candidate_count(), kNone);
  r.pool.assign(inst.candidate_count(), kNone);
  std::vector<std::uint32_t> occupancy(inst.pool_count(), 0);
  for (CandidateId c : inst.views[list].scan_order) {
    for (const Instance::ViewSlot& slot : inst.view(list, c)) {
      ++r.sum_p;
      ++r.op_counter;
      if (occupancy[slot.pool] < inst.pools[slot.pool].capacity) {
        ++occupancy[slot.pool];
        r.rank[c] = slot.overall_rank;
        r.pool[c] = slot.pool;
        ++r.op_counter;
        break;
      }
    }
  }
  return r;
}

std::vector<AllotmentResult> allocate_delinked(const Instance& inst) {
  std::vector<AllotmentResult> out;
  out.reserve(inst.list_count());
  for (ListId t = 0; t < inst.list_count(); ++t) out.push_back(allocate_single_list(inst, t));
  return out;
}

std::uint64_t multi_hold_excess(const std::vector<AllotmentResult>& per_list) {
  if (per_list.empty()) return 0;
  std::uint64_t seats = 0;
  std::vector<std::uint8_t> holds(per_list.front().pool.size(), 0);
  for (const AllotmentResult& r : per_list) {
    for (std::size_t c = 0; c < r.pool.size(); ++c) {
      if (r.pool[c] == kNone) continue;
      ++seats;
      holds[c] = 1;
    }
  }
  std::uint64_t holders = 0;
  for (std::uint8_t h : holds) holders += h;
  return seats - holders;
}

}  // namespace seatalloc
