#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "seatalloc/instance.hpp"

namespace seatalloc {

// Raised by to_virtual_market when supernumerary capacities are still
// dynamic: either disable quotas or pass the capacities of a finished run.
struct UnfrozenCapacitiesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by check_stability on a matching that overfills a pool, seats an
// ineligible candidate, or assigns a pool the candidate never listed.
struct MalformedMatchingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Independent reference model: the pool market recast as college admissions.
// One virtual college per seat pool; its priority order is the governing
// merit list restricted to candidates that rank it. Kept deliberately simple
// and quadratic — correctness oracle, not production path.
struct VirtualMarket {
  std::size_t n_cands = 0;
  // Per candidate: pool ids in expanded preference order (verbatim copy).
  std::vector<std::vector<PoolId>> prefs;
  std::vector<std::uint32_t> capacity;
  // priority[p][c] = position of c in pool p's priority order, kNone if
  // ineligible (absent from the governing list or never ranks p).
  std::vector<std::vector<std::uint32_t>> priority;
};

// Throws UnfrozenCapacitiesError when quotas are enabled (supernumerary pool
// sizes are then run-dependent; use the capacity-override overload).
VirtualMarket to_virtual_market(const Instance& inst);

// Market with every pool capacity given explicitly (e.g. frozen from a
// finished engine run).
VirtualMarket to_virtual_market(const Instance& inst,
                                const std::vector<std::uint32_t>& capacity);

struct Matching {
  // Per candidate: pool matched, kNone if unmatched.
  std::vector<PoolId> pool;
  std::vector<std::uint32_t> rank;  // preference rank of that pool, kNone
};

struct StabilityViolation {
  enum class Kind { JustifiedEnvy, WastedSeat };
  Kind kind;
  CandidateId cand = kNone;
  PoolId pool = kNone;
  CandidateId incumbent = kNone;  // occupant with lower priority, envy only
  std::string describe() const;
};

struct StabilityReport {
  std::vector<StabilityViolation> justified_envy;
  std::vector<StabilityViolation> waste;
  bool clean() const { return justified_envy.empty() && waste.empty(); }
};

// Candidate-proposing deferred acceptance. Returns the candidate-optimal
// stable matching of the virtual market.
Matching deferred_acceptance(const VirtualMarket& mkt);

// Brute-force stability audit of an arbitrary matching: every (candidate,
// preferred pool) pair is checked for a free seat or a lower-priority
// occupant. O(n·Σ|prefs|) by design. Throws MalformedMatchingError first.
StabilityReport check_stability(const VirtualMarket& mkt, const Matching& m);

// As above, but candidates flagged true in `ignore` are treated as absent
// (withdrawn): their assignments and envy claims are not considered.
StabilityReport check_stability(const VirtualMarket& mkt, const Matching& m,
                                const std::vector<std::uint8_t>& ignore);

// All stable matchings of a tiny market by exhaustive search over candidate
// assignment vectors. Feasible only for a handful of candidates and short
// preference lists; guarded by a size check.
std::vector<Matching> enumerate_stable(const VirtualMarket& mkt);

struct MatchDiff {
  CandidateId cand = kNone;
  PoolId engine_pool = kNone;  // kNone = unassigned
  PoolId oracle_pool = kNone;
};

struct OracleComparison {
  bool equal = false;
  std::vector<MatchDiff> diffs;
  StabilityReport engine_report;
};

// Engine outcome vs deferred acceptance on the same market, plus a stability
// audit of the engine outcome. `engine_pool` is per-candidate, kNone for
// unassigned. Requires quotas disabled (see to_virtual_market).
OracleComparison compare_with_oracle(const Instance& inst,
                                     const std::vector<PoolId>& engine_pool);

}  // namespace seatalloc
