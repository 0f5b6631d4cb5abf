#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "seatalloc/instance.hpp"

namespace seatalloc {

enum class EventKind : std::uint8_t {
  Allot,      // merit-order pass assigned a seat
  Enqueue,    // candidate appended to a full pool's waiting queue
  Offer,      // vacancy offered to the queue head (followed by Skip or Accept)
  Skip,       // head consumed without a move (holds better, or withdrawn)
  Accept,     // head consumed and moved into the offered pool
  Vacate,     // seat released; always immediately follows its cause
  SupCreate,  // one supernumerary seat added to a FEMALE_SUPERNUMERARY pool
  Withdraw,   // candidate withdrew
};

enum class StepTag : std::uint8_t { Step1, Improve, Cascade, Withdraw };

const char* to_string(EventKind kind);

// One public, replayable record per elementary action.
//
// before/after are 1-based overall preference ranks (kNone = unassigned):
//   Allot/Accept: before = prior assignment, after = new assignment
//   Enqueue/Offer/Skip: before = current assignment, after = rank of `pool`
//   Vacate: before = rank of the released `pool`, after = rank now held
//   Withdraw: before = assignment at withdrawal, after = kNone
//   SupCreate: cand = kNone, before = kNone, after = new pool capacity
struct AuditEvent {
  std::uint64_t seq = 0;
  StepTag step = StepTag::Step1;
  std::uint32_t step_list = 0;  // list id, meaningful for StepTag::Improve
  EventKind kind = EventKind::Allot;
  CandidateId cand = kNone;
  PoolId pool = kNone;
  std::uint32_t before = kNone;
  std::uint32_t after = kNone;
};

class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void on_event(const AuditEvent& e) = 0;
};

class VectorSink final : public EventSink {
 public:
  std::vector<AuditEvent> events;
  void on_event(const AuditEvent& e) override { events.push_back(e); }
};

// Raised when elementary steps exceed the proven bound-derived budget;
// signals an implementation bug, never a legal input.
struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WithdrawError : std::runtime_error {
  enum class Reason { UnknownCandidate, AlreadyWithdrawn };
  Reason reason;
  WithdrawError(Reason r, const std::string& msg) : std::runtime_error(msg), reason(r) {}
};

struct ReplayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WaitEntry {
  CandidateId cand = kNone;
  std::uint32_t rank = kNone;  // rank of the pool in this candidate's prefs
};

struct PoolState {
  std::uint32_t capacity = 0;
  std::uint32_t occupancy = 0;
  std::vector<CandidateId> occupants;  // unordered; slot index kept per candidate
  std::vector<WaitEntry> queue;        // FIFO; entries before `head` are consumed
  std::uint32_t head = 0;
  bool pending = false;  // already sitting in the vacancy queue
};

struct CandState {
  std::uint32_t rank = kNone;  // overall rank currently allotted
  PoolId pool = kNone;
  std::uint32_t slot = kNone;  // index into PoolState::occupants
  bool withdrawn = false;
};

inline constexpr double kDefaultBudgetC = 8.0;

// Mutable engine state for one run. Single-writer, single-threaded; the
// instance stays immutable and shareable across concurrent runs.
struct AllocationState {
  explicit AllocationState(const Instance& inst, EventSink* sink = nullptr,
                           double budget_c = kDefaultBudgetC);

  const Instance* inst;
  std::vector<CandState> cands;
  std::vector<PoolState> pools;

  // FIFO of pools pending re-offer; a pool appears at most once.
  std::vector<PoolId> vacancies;
  std::size_t vac_head = 0;

  // Supernumerary bookkeeping, per course.
  std::vector<std::uint32_t> created_sup;
  std::vector<std::uint8_t> fill_seen;

  std::uint64_t seq = 0;
  std::uint64_t op_counter = 0;
  std::uint64_t sum_p = 0;  // step-1 scan lengths
  std::uint64_t sum_q = 0;  // improve-pass scan lengths
  std::uint64_t enqueues = 0;
  std::uint64_t consumed = 0;
  std::uint64_t supcreated = 0;
  std::uint64_t withdrawals = 0;

  EventSink* sink = nullptr;
  double budget_c = kDefaultBudgetC;
  StepTag phase = StepTag::Step1;
  std::uint32_t phase_list = 0;
  std::uint32_t passes_done = 0;  // first pass is the opening (Step 1) pass
  bool prepared = false;          // one-time init (born-full quota courses) ran

  std::uint32_t rank_of(CandidateId c) const { return cands[c].rank; }
  PoolId pool_of(CandidateId c) const { return cands[c].pool; }
  bool assigned(CandidateId c) const { return cands[c].pool != kNone; }

  std::uint64_t budget_base() const {
    return inst->pool_count() + sum_p + sum_q + supcreated + 2 * withdrawals + 16;
  }

  void set_phase(StepTag tag, std::uint32_t list = 0) {
    phase = tag;
    phase_list = list;
  }

  // One elementary step (scan examination, enqueue, queue consumption,
  // vacancy push/pop, move); trips the tripwire when an implementation bug
  // makes work superlinear. The allocator charges explicitly so the counter
  // matches the documented step definition; state primitives never charge.
  void charge(std::uint64_t n = 1) {
    op_counter += n;
    if (static_cast<double>(op_counter) > budget_c * static_cast<double>(budget_base()))
      throw BudgetExceededError("elementary step budget exceeded: ops=" +
                                std::to_string(op_counter) +
                                " base=" + std::to_string(budget_base()));
  }

  void emit(EventKind kind, CandidateId cand, PoolId pool, std::uint32_t before,
            std::uint32_t after) {
    AuditEvent e{++seq, phase, phase_list, kind, cand, pool, before, after};
    if (sink) sink->on_event(e);
  }

  // Primitive seat ops; events and charging are the caller's business.
  void occupy(CandidateId c, PoolId p, std::uint32_t rank);
  void release(CandidateId c);
  void enqueue(PoolId p, CandidateId c, std::uint32_t rank);
  void push_vacancy(PoolId p);
  PoolId pop_vacancy();  // kNone when drained
  bool has_vacancies() const { return vac_head < vacancies.size(); }
};

// Full-state consistency auditor: occupant sets vs per-candidate assignment,
// occupancy vs capacity, queue suffixes in governing-list merit order,
// supernumerary caps within quota. Throws std::logic_error on violation.
void audit_consistency(const Instance& inst, const AllocationState& st);

}  // namespace seatalloc
