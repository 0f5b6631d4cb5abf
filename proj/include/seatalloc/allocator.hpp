#pragma once

#include <cstdint>
#include <vector>

#include "seatalloc/instance.hpp"
#include "seatalloc/state.hpp"

namespace seatalloc {

struct AllotmentResult {
  // Per candidate: overall (expanded) preference rank held, kNone if none.
  std::vector<std::uint32_t> rank;
  // Per candidate: pool held, kNone if none.
  std::vector<PoolId> pool;
  std::uint64_t op_counter = 0;
  std::uint64_t sum_p = 0;
  std::uint64_t sum_q = 0;
};

AllotmentResult snapshot(const AllocationState& st);

// Joint allotment across all merit lists: a merit-order pass over the first
// list's view, then one improvement pass per remaining list, with vacancies
// cascaded down waiting queues after every pass. `lists_order` selects the
// processing order (must be a permutation of all list ids); the outcome is
// order-independent, which tests exercise directly.
void allocate_joint(AllocationState& st, const std::vector<ListId>& lists_order);

// Convenience overload: natural list order 0..k-1.
void allocate_joint(AllocationState& st);

// One merit-order pass over list `t`'s view. From fresh state this is the
// opening pass; on a partially allotted state it is an improvement pass that
// only examines entries strictly better than the candidate's current seat.
void run_pass(AllocationState& st, ListId t);

// Drain the vacancy queue: offer each open seat down its waiting queue until
// the pool refills or the queue is exhausted; moves release seats, which may
// push further vacancies.
void cascade_vacancies(AllocationState& st);

// Candidate withdraws: seat (if any) is released and cascaded; the candidate
// is skipped by every later offer. Throws WithdrawError on unknown or repeat.
void withdraw(AllocationState& st, CandidateId cand);

// Greedy baseline over one list in isolation: each candidate in merit order
// takes the first non-full pool of their view of `list`. No waiting lists,
// no events; op_counter counts scan examinations plus assignments.
AllotmentResult allocate_single_list(const Instance& inst, ListId list);

// Baseline for comparison tests: each list allotted in isolation, candidates
// may hold one seat per list (multi-holding). Returns per-list results.
std::vector<AllotmentResult> allocate_delinked(const Instance& inst);

// Seats occupied across a delinked outcome minus distinct candidates seated —
// the head-count cost of multi-holding.
std::uint64_t multi_hold_excess(const std::vector<AllotmentResult>& per_list);

}  // namespace seatalloc
