#include "seatalloc/state.hpp"

#include <stdexcept>
#include <string>

namespace seatalloc {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Allot: return "ALLOT";
    case EventKind::Enqueue: return "ENQUEUE";
    case EventKind::Offer: return "OFFER";
    case EventKind::Skip: return "SKIP";
    case EventKind::Accept: return "ACCEPT";
    case EventKind::Vacate: return "VACATE";
    case EventKind::SupCreate: return "SUPCREATE";
    case EventKind::Withdraw: return "WITHDRAW";
  }
  return "?";
}

AllocationState::AllocationState(const Instance& inst_, EventSink* sink_, double budget_c_)
    : inst(&inst_), sink(sink_), budget_c(budget_c_) {
  cands.resize(inst->candidate_count());
  pools.resize(inst->pool_count());
  for (std::size_t p = 0; p < pools.size(); ++p)
    pools[p].capacity = inst->pools[p].capacity;
  created_sup.assign(inst->course_count(), 0);
  fill_seen.assign(inst->course_count(), 0);
}

void AllocationState::occupy(CandidateId c, PoolId p, std::uint32_t rank) {
  PoolState& ps = pools[p];
  CandState& cs = cands[c];
  cs.rank = rank;
  cs.pool = p;
  cs.slot = static_cast<std::uint32_t>(ps.occupants.size());
  ps.occupants.push_back(c);
  ++ps.occupancy;
}

void AllocationState::release(CandidateId c) {
  CandState& cs = cands[c];
  PoolState& ps = pools[cs.pool];
  CandidateId last = ps.occupants.back();
  ps.occupants[cs.slot] = last;
  cands[last].slot = cs.slot;
  ps.occupants.pop_back();
  --ps.occupancy;
  cs.rank = kNone;
  cs.pool = kNone;
  cs.slot = kNone;
}

void AllocationState::enqueue(PoolId p, CandidateId c, std::uint32_t rank) {
  pools[p].queue.push_back(WaitEntry{c, rank});
  ++enqueues;
}

void AllocationState::push_vacancy(PoolId p) {
  PoolState& ps = pools[p];
  if (ps.pending) return;
  ps.pending = true;
  vacancies.push_back(p);
  charge();
}

PoolId AllocationState::pop_vacancy() {
  if (vac_head >= vacancies.size()) {
    vacancies.clear();
    vac_head = 0;
    return kNone;
  }
  PoolId p = vacancies[vac_head++];
  pools[p].pending = false;
  charge();
  return p;
}

namespace {

[[noreturn]] void inconsistent(const std::string& what) {
  throw std::logic_error("allocation state inconsistent: " + what);
}

}  // namespace

void audit_consistency(const Instance& inst, const AllocationState& st) {
  if (st.cands.size() != inst.candidate_count() || st.pools.size() != inst.pool_count())
    inconsistent("state sized for a different instance");

  std::size_t seated_by_cands = 0;
  for (CandidateId c = 0; c < st.cands.size(); ++c) {
    const CandState& cs = st.cands[c];
    if ((cs.pool == kNone) != (cs.rank == kNone))
      inconsistent("candidate " + inst.candidates[c].name + " has half an assignment");
    if (cs.pool == kNone) continue;
    ++seated_by_cands;
    if (cs.rank < 1 || cs.rank > inst.pref_count(c))
      inconsistent("candidate " + inst.candidates[c].name + " holds an out-of-range rank");
    if (inst.pool_at_rank(c, cs.rank) != cs.pool)
      inconsistent("candidate " + inst.candidates[c].name +
                   " rank does not point at the held pool");
    const PoolState& ps = st.pools[cs.pool];
    if (cs.slot >= ps.occupants.size() || ps.occupants[cs.slot] != c)
      inconsistent("candidate " + inst.candidates[c].name + " slot pointer is stale");
  }

  std::size_t seated_by_pools = 0;
  for (PoolId p = 0; p < st.pools.size(); ++p) {
    const PoolState& ps = st.pools[p];
    const SeatPool& sp = inst.pools[p];
    if (ps.occupancy != ps.occupants.size())
      inconsistent("pool " + inst.pool_label(p) + " occupancy count drifted");
    if (ps.occupancy > ps.capacity) inconsistent("pool " + inst.pool_label(p) + " overfull");
    if (!sp.female_only && ps.capacity != sp.capacity)
      inconsistent("pool " + inst.pool_label(p) + " regular capacity mutated");
    if (sp.female_only) {
      if (ps.capacity < sp.capacity ||
          ps.capacity > inst.courses[sp.course].female_quota)
        inconsistent("pool " + inst.pool_label(p) + " supernumerary capacity out of range");
      for (CandidateId c : ps.occupants)
        if (!inst.candidates[c].female)
          inconsistent("pool " + inst.pool_label(p) + " seats a non-female candidate");
    }
    seated_by_pools += ps.occupants.size();
    for (CandidateId c : ps.occupants)
      if (st.cands[c].pool != p)
        inconsistent("pool " + inst.pool_label(p) + " holds a candidate assigned elsewhere");

    // Unconsumed queue suffix: merit-ordered on the governing list, entry
    // ranks pointing back at this pool.
    if (ps.head > ps.queue.size())
      inconsistent("pool " + inst.pool_label(p) + " consumed past its queue");
    const MeritList& list = inst.lists[sp.list];
    std::uint32_t prev = 0;
    for (std::size_t i = ps.head; i < ps.queue.size(); ++i) {
      const WaitEntry& e = ps.queue[i];
      if (e.cand >= st.cands.size()) inconsistent("queue entry names a bogus candidate");
      std::uint32_t merit = list.rank_of[e.cand];
      if (merit == kNone)
        inconsistent("pool " + inst.pool_label(p) + " queues a candidate off its list");
      if (merit <= prev)
        inconsistent("pool " + inst.pool_label(p) + " queue is out of merit order");
      prev = merit;
      if (e.rank < 1 || e.rank > inst.pref_count(e.cand) ||
          inst.pool_at_rank(e.cand, e.rank) != p)
        inconsistent("pool " + inst.pool_label(p) + " queue entry rank is wrong");
    }
  }

  if (seated_by_cands != seated_by_pools) inconsistent("occupant sets and assignments differ");

  for (CourseId j = 0; j < inst.courses.size(); ++j) {
    if (st.created_sup[j] > inst.courses[j].female_quota)
      inconsistent("course " + inst.courses[j].name + " created seats beyond its quota");
  }
}

}  // namespace seatalloc
