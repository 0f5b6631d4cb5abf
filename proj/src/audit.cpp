#include "seatalloc/audit.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "seatalloc/io.hpp"
#include "seatalloc/reservation.hpp"

namespace seatalloc {

namespace {

constexpr const char* kHeader = "seq,step,kind,cand,pool,before,after";

std::string step_tag(const Instance& inst, const AuditEvent& e) {
  switch (e.step) {
    case StepTag::Step1: return "STEP1";
    case StepTag::Improve: return "IMPROVE-" + inst.lists[e.step_list].name;
    case StepTag::Cascade: return "CASCADE";
    case StepTag::Withdraw: return "WITHDRAW";
  }
  return "?";
}

std::string num_or_dash(std::uint32_t v) {
  return v == kNone ? std::string("-") : std::to_string(v);
}

[[noreturn]] void bad_row(std::size_t line, const std::string& what) {
  throw ReplayError("audit log line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_audit_header(std::ostream& os) { os << kHeader << '\n'; }

void write_audit_event(std::ostream& os, const Instance& inst, const AuditEvent& e) {
  os << e.seq << ',' << step_tag(inst, e) << ',' << to_string(e.kind) << ','
     << (e.cand == kNone ? std::string("-") : inst.candidates[e.cand].name) << ','
     << (e.pool == kNone ? std::string("-") : inst.pool_label(e.pool)) << ','
     << num_or_dash(e.before) << ',' << num_or_dash(e.after) << '\n';
}

void write_audit_log(std::ostream& os, const Instance& inst,
                     const std::vector<AuditEvent>& events) {
  write_audit_header(os);
  for (const AuditEvent& e : events) write_audit_event(os, inst, e);
}

std::vector<AuditEvent> parse_audit_log(std::istream& is, const Instance& inst) {
  std::unordered_map<std::string, CandidateId> cand_by_name;
  for (CandidateId c = 0; c < inst.candidate_count(); ++c)
    cand_by_name.emplace(inst.candidates[c].name, c);
  std::unordered_map<std::string, PoolId> pool_by_label;
  for (PoolId p = 0; p < inst.pool_count(); ++p)
    if (!pool_by_label.emplace(inst.pool_label(p), p).second)
      throw ReplayError("ambiguous pool label '" + inst.pool_label(p) + "'");
  std::unordered_map<std::string, ListId> list_by_name;
  for (ListId t = 0; t < inst.list_count(); ++t)
    list_by_name.emplace(inst.lists[t].name, t);

  auto parse_u64 = [](const std::string& s, std::uint64_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
  };
  auto parse_rank = [&](const std::string& s, std::size_t line) -> std::uint32_t {
    if (s == "-") return kNone;
    std::uint64_t v = 0;
    if (!parse_u64(s, v) || v >= kNone) bad_row(line, "bad rank field '" + s + "'");
    return static_cast<std::uint32_t>(v);
  };

  std::vector<AuditEvent> out;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line) || line != kHeader)
    throw ReplayError("audit log: missing or wrong header");
  ++lineno;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f = split_csv(line);
    if (f.size() != 7) bad_row(lineno, "expected 7 fields, got " + std::to_string(f.size()));
    AuditEvent e;
    std::uint64_t seq = 0;
    if (!parse_u64(f[0], seq)) bad_row(lineno, "bad seq '" + f[0] + "'");
    e.seq = seq;

    if (f[1] == "STEP1") e.step = StepTag::Step1;
    else if (f[1] == "CASCADE") e.step = StepTag::Cascade;
    else if (f[1] == "WITHDRAW") e.step = StepTag::Withdraw;
    else if (f[1].rfind("IMPROVE-", 0) == 0) {
      auto it = list_by_name.find(f[1].substr(8));
      if (it == list_by_name.end()) bad_row(lineno, "unknown list in step tag '" + f[1] + "'");
      e.step = StepTag::Improve;
      e.step_list = it->second;
    } else bad_row(lineno, "unknown step tag '" + f[1] + "'");

    static const std::pair<const char*, EventKind> kinds[] = {
        {"ALLOT", EventKind::Allot},       {"ENQUEUE", EventKind::Enqueue},
        {"OFFER", EventKind::Offer},       {"SKIP", EventKind::Skip},
        {"ACCEPT", EventKind::Accept},     {"VACATE", EventKind::Vacate},
        {"SUPCREATE", EventKind::SupCreate}, {"WITHDRAW", EventKind::Withdraw}};
    bool kind_ok = false;
    for (const auto& [name, kind] : kinds) {
      if (f[2] == name) {
        e.kind = kind;
        kind_ok = true;
        break;
      }
    }
    if (!kind_ok) bad_row(lineno, "unknown event kind '" + f[2] + "'");

    if (f[3] == "-") e.cand = kNone;
    else {
      auto it = cand_by_name.find(f[3]);
      if (it == cand_by_name.end()) bad_row(lineno, "unknown candidate '" + f[3] + "'");
      e.cand = it->second;
    }
    if (f[4] == "-") e.pool = kNone;
    else {
      auto it = pool_by_label.find(f[4]);
      if (it == pool_by_label.end()) bad_row(lineno, "unknown pool '" + f[4] + "'");
      e.pool = it->second;
    }
    e.before = parse_rank(f[5], lineno);
    e.after = parse_rank(f[6], lineno);
    out.push_back(e);
  }
  return out;
}

namespace {

struct PendingVacate {
  CandidateId cand;
  PoolId pool;
  std::uint32_t before;
  std::uint32_t after;
};

[[noreturn]] void bad_event(const AuditEvent& e, const std::string& what) {
  throw ReplayError("event seq " + std::to_string(e.seq) + " (" + to_string(e.kind) +
                    "): " + what);
}

// Ranks are 1-based with kNone as "unassigned"; kNone compares as worst.
bool strictly_better(std::uint32_t after, std::uint32_t before) {
  return after != kNone && (before == kNone || after < before);
}

}  // namespace

AllocationState replay(const Instance& inst, const std::vector<AuditEvent>& events) {
  AllocationState st(inst, nullptr);
  st.prepared = true;
  st.passes_done = static_cast<std::uint32_t>(inst.list_count());

  // Cap-0 unreserved pools of quota courses count as filled from the start,
  // mirroring the engine's one-time init.
  if (inst.quotas_enabled) {
    for (CourseId j = 0; j < inst.courses.size(); ++j)
      if (inst.courses[j].female_sup != kNone &&
          st.pools[inst.courses[j].unreserved].capacity == 0)
        st.fill_seen[j] = 1;
  }

  // Plain values with explicit flags; an std::optional here draws spurious
  // maybe-uninitialized warnings from the payload reads under heavy inlining.
  PendingVacate pending{};
  bool has_pending = false;
  CandidateId offered_cand = kNone;
  PoolId offered_pool = kNone;
  bool has_offer = false;
  std::uint64_t expected_seq = 1;

  auto check_cand = [&](const AuditEvent& e) {
    if (e.cand >= st.cands.size()) bad_event(e, "candidate id out of range");
  };
  auto check_pool = [&](const AuditEvent& e) {
    if (e.pool >= st.pools.size()) bad_event(e, "pool id out of range");
  };
  auto note_fill = [&](PoolId p) {
    // Track "course has filled" for supernumerary accounting.
    const SeatPool& sp = inst.pools[p];
    if (inst.quotas_enabled && inst.courses[sp.course].female_sup != kNone &&
        p == inst.courses[sp.course].unreserved &&
        st.pools[p].occupancy == st.pools[p].capacity)
      st.fill_seen[sp.course] = 1;
  };

  for (const AuditEvent& e : events) {
    if (e.seq != expected_seq++)
      bad_event(e, "sequence number out of order (expected " +
                       std::to_string(expected_seq - 1) + ")");
    if (has_pending && e.kind != EventKind::Vacate)
      bad_event(e, "a released seat must be vacated immediately");
    if (has_offer && e.kind != EventKind::Skip && e.kind != EventKind::Accept)
      bad_event(e, "an offer must be resolved by SKIP or ACCEPT");

    switch (e.kind) {
      case EventKind::Allot:
      case EventKind::Accept: {
        check_cand(e);
        check_pool(e);
        CandState& cs = st.cands[e.cand];
        if (cs.withdrawn) bad_event(e, "withdrawn candidate moved");
        if (cs.rank != e.before) bad_event(e, "before-rank does not match held rank");
        if (!strictly_better(e.after, e.before))
          bad_event(e, "assignment does not strictly improve");
        if (e.after < 1 || e.after > inst.pref_count(e.cand))
          bad_event(e, "after-rank out of preference range");
        if (inst.pool_at_rank(e.cand, e.after) != e.pool)
          bad_event(e, "pool is not the candidate's preference at after-rank");
        if (e.kind == EventKind::Accept) {
          if (!has_offer || offered_cand != e.cand || offered_pool != e.pool)
            bad_event(e, "accept without a matching offer");
          PoolState& ps = st.pools[e.pool];
          const WaitEntry& entry = ps.queue[ps.head];
          if (entry.cand != e.cand || entry.rank != e.after)
            bad_event(e, "accept does not match the queue head");
          ++ps.head;
          ++st.consumed;
          has_offer = false;
        }
        if (st.pools[e.pool].occupancy >= st.pools[e.pool].capacity)
          bad_event(e, "pool has no free seat");
        const PoolId old_pool = cs.pool;
        const std::uint32_t old_rank = cs.rank;
        if (old_pool != kNone) {
          st.release(e.cand);
          pending = PendingVacate{e.cand, old_pool, old_rank, e.after};
          has_pending = true;
        }
        st.occupy(e.cand, e.pool, e.after);
        note_fill(e.pool);
        break;
      }
      case EventKind::Enqueue: {
        check_cand(e);
        check_pool(e);
        const CandState& cs = st.cands[e.cand];
        if (cs.withdrawn) bad_event(e, "withdrawn candidate enqueued");
        if (cs.rank != e.before) bad_event(e, "before-rank does not match held rank");
        if (e.after < 1 || e.after > inst.pref_count(e.cand) ||
            inst.pool_at_rank(e.cand, e.after) != e.pool)
          bad_event(e, "enqueue rank does not point at the pool");
        if (!strictly_better(e.after, e.before))
          bad_event(e, "enqueued on a pool not preferred to the held seat");
        PoolState& ps = st.pools[e.pool];
        if (ps.occupancy < ps.capacity) bad_event(e, "enqueued on a pool with a free seat");
        st.enqueue(e.pool, e.cand, e.after);
        break;
      }
      case EventKind::Offer: {
        check_cand(e);
        check_pool(e);
        PoolState& ps = st.pools[e.pool];
        if (ps.occupancy >= ps.capacity) bad_event(e, "offer from a full pool");
        if (ps.head >= ps.queue.size()) bad_event(e, "offer with an exhausted queue");
        const WaitEntry& head = ps.queue[ps.head];
        if (head.cand != e.cand) bad_event(e, "offer skips past the queue head");
        if (head.rank != e.after) bad_event(e, "offer rank differs from the queued rank");
        if (st.cands[e.cand].rank != e.before)
          bad_event(e, "before-rank does not match held rank");
        offered_cand = e.cand;
        offered_pool = e.pool;
        has_offer = true;
        break;
      }
      case EventKind::Skip: {
        check_cand(e);
        check_pool(e);
        if (!has_offer || offered_cand != e.cand || offered_pool != e.pool)
          bad_event(e, "skip without a matching offer");
        const CandState& cs = st.cands[e.cand];
        if (!cs.withdrawn && strictly_better(e.after, cs.rank))
          bad_event(e, "skipped a candidate who wanted the seat");
        ++st.pools[e.pool].head;
        ++st.consumed;
        has_offer = false;
        break;
      }
      case EventKind::Vacate: {
        check_cand(e);
        check_pool(e);
        if (!has_pending) bad_event(e, "vacate without an immediately preceding cause");
        if (pending.cand != e.cand || pending.pool != e.pool ||
            pending.before != e.before || pending.after != e.after)
          bad_event(e, "vacate does not match its cause");
        has_pending = false;
        break;
      }
      case EventKind::Withdraw: {
        check_cand(e);
        CandState& cs = st.cands[e.cand];
        if (cs.withdrawn) bad_event(e, "candidate withdrew twice");
        if (cs.rank != e.before) bad_event(e, "before-rank does not match held rank");
        if (e.after != kNone) bad_event(e, "withdrawal cannot leave an assignment");
        if (cs.pool != e.pool) bad_event(e, "pool does not match the held seat");
        cs.withdrawn = true;
        ++st.withdrawals;
        if (cs.pool != kNone) {
          const PoolId old_pool = cs.pool;
          const std::uint32_t old_rank = cs.rank;
          st.release(e.cand);
          pending = PendingVacate{e.cand, old_pool, old_rank, kNone};
          has_pending = true;
        }
        break;
      }
      case EventKind::SupCreate: {
        check_pool(e);
        if (e.cand != kNone || e.before != kNone) bad_event(e, "malformed seat creation");
        const SeatPool& sp = inst.pools[e.pool];
        if (!sp.female_only) bad_event(e, "seat created on a regular pool");
        PoolState& ps = st.pools[e.pool];
        if (ps.capacity + 1 != e.after) bad_event(e, "capacity does not advance by one");
        if (st.created_sup[sp.course] + 1 > inst.courses[sp.course].female_quota)
          bad_event(e, "created seats exceed the course quota");
        ++ps.capacity;
        ++st.created_sup[sp.course];
        ++st.supcreated;
        break;
      }
    }
  }
  if (has_pending) throw ReplayError("log ends with an unvacated released seat");
  if (has_offer) throw ReplayError("log ends with an unresolved offer");

  st.seq = events.empty() ? 0 : events.back().seq;
  // Re-derived work base so post-replay withdrawals budget sanely: every
  // consumable queue entry was an enqueue, and enqueues are bounded by the
  // original run's scan work.
  st.sum_p = st.enqueues;
  audit_consistency(inst, st);
  return st;
}

}  // namespace seatalloc
