#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "seatalloc/state.hpp"
#include "seatalloc/validate.hpp"

namespace seatalloc {

// Splits one CSV record. No quoting: fields are plain tokens, commas are the
// only separator, surrounding whitespace is trimmed.
std::vector<std::string> split_csv(const std::string& line);

// Reads the five input tables from a directory holding merit.csv,
// courses.csv, quotas.csv (optional), candidates.csv and prefs.csv.
// Parse-level problems (bad arity, non-numeric fields, missing header) are
// reported as diagnostics with file:line positions; later phases only run on
// tables that parsed.
struct LoadResult {
  RawTables tables;
  std::vector<Diagnostic> errors;
  bool ok() const { return errors.empty(); }
};
LoadResult load_tables(const std::filesystem::path& dir);

// load_tables + validate_instance in one step.
ValidationResult load_instance(const std::filesystem::path& dir, bool enable_quotas);

// Streams audit rows to a file as the engine runs.
class CsvAuditSink final : public EventSink {
 public:
  CsvAuditSink(const std::filesystem::path& file, const Instance& inst);
  ~CsvAuditSink() override;
  void on_event(const AuditEvent& e) override;

 private:
  struct Impl;
  Impl* impl_;
};

// allotment.csv: candidate_id,course_id,category,list_id,pref_rank rows in
// candidate order, unassigned candidates with "-" placeholders.
void write_allotment(std::ostream& os, const Instance& inst, const AllocationState& st);

// unassigned.csv: candidate ids (candidate order) holding no seat.
void write_unassigned(std::ostream& os, const Instance& inst, const AllocationState& st);

// metrics.txt: op counter, work terms, queue totals — key=value lines.
void write_metrics(std::ostream& os, const AllocationState& st);

// Writes allotment.csv, unassigned.csv, audit.csv and metrics.txt under
// out_dir. Byte-deterministic given identical runs.
void write_outputs(const std::filesystem::path& out_dir, const Instance& inst,
                   const AllocationState& st, const std::vector<AuditEvent>& events);

// FNV-1a fingerprint of a file's bytes; determinism checks compare these.
std::uint64_t file_fingerprint(const std::filesystem::path& file);

// Writes the five input tables under `dir` (generator output, fixtures).
void write_tables(const std::filesystem::path& dir, const RawTables& tables);

}  // namespace seatalloc
