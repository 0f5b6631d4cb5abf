#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seatalloc/instance.hpp"

namespace seatalloc {

enum class DiagCode : std::uint8_t {
  ParseError,
  BadHeader,
  DuplicateRank,
  DuplicateId,
  DuplicatePool,
  DuplicatePreference,
  UnknownId,
  UnknownCategory,
  CandidateNotInGoverningList,
  NegativeCapacity,
  MissingUnreservedPool,
  InconsistentGoverningList,
  ReservedName,
  InfeasibleParams,
};

const char* to_string(DiagCode code);

struct Diagnostic {
  DiagCode code;
  std::string where;  // "file:line" or a short context like "candidate c3"
  std::string message;
};

std::string format(const Diagnostic& d);

// Parsed-but-unvalidated input rows. `where` carries file:line for diagnostics;
// rows built programmatically (generator, tests) leave it empty.
struct RawTables {
  struct MeritRow {
    std::string list, cand;
    std::int64_t rank = 0;
    std::string where;
  };
  struct CourseRow {
    std::string course, list, category;
    std::int64_t capacity = 0;
    std::string where;
  };
  struct QuotaRow {
    std::string course;
    std::int64_t quota = 0;
    std::string where;
  };
  struct CandidateRow {
    std::string cand;
    int is_female = 0;
    std::vector<std::string> categories;
    std::string where;
  };
  struct PrefRow {
    std::string cand;
    std::int64_t rank = 0;
    std::string course;
    std::string where;
  };

  std::vector<MeritRow> merit;
  std::vector<CourseRow> courses;
  std::vector<QuotaRow> quotas;
  std::vector<CandidateRow> candidates;
  std::vector<PrefRow> prefs;
};

struct ValidationResult {
  std::vector<Diagnostic> errors;
  std::optional<Instance> instance;
  bool ok() const { return errors.empty() && instance.has_value(); }
};

// Validation is total: every malformed input yields diagnostics, never a crash
// or a silently repaired instance. All failures are aggregated.
ValidationResult validate_instance(const RawTables& raw, bool enable_quotas);

}  // namespace seatalloc
