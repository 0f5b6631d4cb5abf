#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seatalloc/state.hpp"

namespace seatalloc {

// Audit log wire format: one CSV row per event,
//   seq,step,kind,cand,pool,before,after
// with a fixed header, kNone serialized as "-". step carries the phase
// (STEP1, IMPROVE-<list>, CASCADE, WITHDRAW); candidate and pool columns use
// external names so logs are meaningful without the id maps.
void write_audit_header(std::ostream& os);
void write_audit_event(std::ostream& os, const Instance& inst, const AuditEvent& e);
void write_audit_log(std::ostream& os, const Instance& inst,
                     const std::vector<AuditEvent>& events);

// Parses a log produced by write_audit_log against the same instance.
// Throws ReplayError on malformed rows or unknown names.
std::vector<AuditEvent> parse_audit_log(std::istream& is, const Instance& inst);

// Replays events onto a fresh state, re-validating every transition:
// sequence numbers, capacity bounds, queue integrity, the no-deallocation
// rule (rank strictly improves on every Allot/Accept; only Withdraw may
// unseat without improvement), and Vacate adjacency. Returns the
// reconstructed state; throws ReplayError on the first inconsistency.
AllocationState replay(const Instance& inst, const std::vector<AuditEvent>& events);

}  // namespace seatalloc
