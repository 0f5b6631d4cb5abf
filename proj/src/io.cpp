#include "seatalloc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "seatalloc/audit.hpp"

namespace seatalloc {

namespace fs = std::filesystem;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos ? comma : comma - start);
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

struct TableReader {
  std::vector<Diagnostic>& errors;
  std::string file;
  std::ifstream in;
  std::size_t lineno = 0;
  bool usable = false;

  TableReader(const fs::path& dir, const std::string& name, const char* header,
              std::vector<Diagnostic>& errs, bool required)
      : errors(errs), file(name), in(dir / name) {
    if (!in) {
      if (required)
        errors.push_back(Diagnostic{DiagCode::ParseError, file, "file is missing"});
      return;
    }
    std::string line;
    if (!std::getline(in, line)) {
      errors.push_back(Diagnostic{DiagCode::BadHeader, where(1), "empty file, header expected"});
      return;
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) {
      errors.push_back(Diagnostic{DiagCode::BadHeader, where(1),
                                  "expected header '" + std::string(header) + "'"});
      return;
    }
    usable = true;
  }

  std::string where(std::size_t line) const { return file + ":" + std::to_string(line); }

  // Next data row with the exact field count; skips blank lines; reports and
  // swallows malformed rows so parsing stays total.  The trailing field may be
  // empty only when the caller says so (candidate category sets).
  bool next_row(std::size_t arity, std::vector<std::string>& fields,
                bool allow_empty_last = false) {
    if (!usable) return false;
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fields = split_csv(line);
      if (fields.size() != arity) {
        errors.push_back(Diagnostic{DiagCode::ParseError, where(lineno),
                                    "expected " + std::to_string(arity) + " fields, got " +
                                        std::to_string(fields.size())});
        continue;
      }
      bool blank = false;
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i].empty() && !(allow_empty_last && i + 1 == fields.size())) blank = true;
      if (blank) {
        errors.push_back(
            Diagnostic{DiagCode::ParseError, where(lineno), "empty field in row"});
        continue;
      }
      return true;
    }
    return false;
  }

  bool to_int(const std::string& s, std::int64_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || p != s.data() + s.size()) {
      errors.push_back(
          Diagnostic{DiagCode::ParseError, where(lineno), "not an integer: '" + s + "'"});
      return false;
    }
    return true;
  }
};

}  // namespace

LoadResult load_tables(const fs::path& dir) {
  LoadResult r;
  std::vector<std::string> f;

  TableReader merit(dir, "merit.csv", "list_id,rank,candidate_id", r.errors, true);
  while (merit.next_row(3, f)) {
    RawTables::MeritRow row{f[0], f[2], 0, merit.where(merit.lineno)};
    if (merit.to_int(f[1], row.rank)) r.tables.merit.push_back(std::move(row));
  }

  TableReader courses(dir, "courses.csv", "course_id,list_id,category,capacity", r.errors, true);
  while (courses.next_row(4, f)) {
    RawTables::CourseRow row{f[0], f[1], f[2], 0, courses.where(courses.lineno)};
    if (courses.to_int(f[3], row.capacity)) r.tables.courses.push_back(std::move(row));
  }

  TableReader quotas(dir, "quotas.csv", "course_id,female_quota", r.errors, false);
  while (quotas.next_row(2, f)) {
    RawTables::QuotaRow row{f[0], 0, quotas.where(quotas.lineno)};
    if (quotas.to_int(f[1], row.quota)) r.tables.quotas.push_back(std::move(row));
  }

  TableReader cands(dir, "candidates.csv", "candidate_id,is_female,categories", r.errors, true);
  while (cands.next_row(3, f, /*allow_empty_last=*/true)) {
    RawTables::CandidateRow row{f[0], 0, {}, cands.where(cands.lineno)};
    std::int64_t female = 0;
    if (!cands.to_int(f[1], female)) continue;
    row.is_female = static_cast<int>(female);
    std::size_t start = 0;
    while (start < f[2].size()) {
      std::size_t semi = f[2].find(';', start);
      std::size_t end = semi == std::string::npos ? f[2].size() : semi;
      if (end > start) row.categories.push_back(f[2].substr(start, end - start));
      start = end + 1;
    }
    r.tables.candidates.push_back(std::move(row));
  }

  TableReader prefs(dir, "prefs.csv", "candidate_id,pref_rank,course_id", r.errors, true);
  while (prefs.next_row(3, f)) {
    RawTables::PrefRow row{f[0], 0, f[2], prefs.where(prefs.lineno)};
    if (prefs.to_int(f[1], row.rank)) r.tables.prefs.push_back(std::move(row));
  }

  return r;
}

ValidationResult load_instance(const fs::path& dir, bool enable_quotas) {
  LoadResult loaded = load_tables(dir);
  if (!loaded.ok()) {
    ValidationResult bad;
    bad.errors = std::move(loaded.errors);
    return bad;
  }
  return validate_instance(loaded.tables, enable_quotas);
}

struct CsvAuditSink::Impl {
  std::ofstream os;
  const Instance* inst;
};

CsvAuditSink::CsvAuditSink(const fs::path& file, const Instance& inst)
    : impl_(new Impl{std::ofstream(file, std::ios::binary), &inst}) {
  if (!impl_->os) {
    std::string what = "cannot open audit file " + file.string();
    delete impl_;
    impl_ = nullptr;
    throw std::runtime_error(what);
  }
  write_audit_header(impl_->os);
}

CsvAuditSink::~CsvAuditSink() { delete impl_; }

void CsvAuditSink::on_event(const AuditEvent& e) {
  write_audit_event(impl_->os, *impl_->inst, e);
}

void write_allotment(std::ostream& os, const Instance& inst, const AllocationState& st) {
  os << "candidate_id,course_id,category,list_id,pref_rank\n";
  for (CandidateId c = 0; c < inst.candidate_count(); ++c) {
    const CandState& cs = st.cands[c];
    os << inst.candidates[c].name << ',';
    if (cs.pool == kNone) {
      os << "-,-,-,-\n";
      continue;
    }
    const SeatPool& sp = inst.pools[cs.pool];
    os << inst.courses[sp.course].name << ',' << inst.categories[sp.category].name << ','
       << inst.lists[sp.list].name << ',' << cs.rank << '\n';
  }
}

void write_unassigned(std::ostream& os, const Instance& inst, const AllocationState& st) {
  os << "candidate_id\n";
  for (CandidateId c = 0; c < inst.candidate_count(); ++c)
    if (st.cands[c].pool == kNone) os << inst.candidates[c].name << '\n';
}

void write_metrics(std::ostream& os, const AllocationState& st) {
  std::size_t assigned = 0;
  for (const CandState& cs : st.cands) assigned += cs.pool != kNone;
  os << "candidates=" << st.cands.size() << '\n'
     << "pools=" << st.pools.size() << '\n'
     << "assigned=" << assigned << '\n'
     << "op_counter=" << st.op_counter << '\n'
     << "sum_p=" << st.sum_p << '\n'
     << "sum_q=" << st.sum_q << '\n'
     << "enqueues=" << st.enqueues << '\n'
     << "consumed=" << st.consumed << '\n'
     << "supernumerary_created=" << st.supcreated << '\n'
     << "withdrawals=" << st.withdrawals << '\n'
     << "budget_base=" << st.budget_base() << '\n'
     << "budget_c=" << st.budget_c << '\n';
}

namespace {

void write_file(const fs::path& file, const std::string& bytes) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + file.string() + " for writing");
  os << bytes;
  if (!os) throw std::runtime_error("failed writing " + file.string());
}

}  // namespace

void write_outputs(const fs::path& out_dir, const Instance& inst, const AllocationState& st,
                   const std::vector<AuditEvent>& events) {
  fs::create_directories(out_dir);
  std::ostringstream alo, una, aud, met;
  write_allotment(alo, inst, st);
  write_unassigned(una, inst, st);
  write_audit_log(aud, inst, events);
  write_metrics(met, st);
  write_file(out_dir / "allotment.csv", alo.str());
  write_file(out_dir / "unassigned.csv", una.str());
  write_file(out_dir / "audit.csv", aud.str());
  write_file(out_dir / "metrics.txt", met.str());
}

std::uint64_t file_fingerprint(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a(buf.str());
}

void write_tables(const fs::path& dir, const RawTables& tables) {
  fs::create_directories(dir);
  std::ostringstream os;

  os << "list_id,rank,candidate_id\n";
  for (const auto& r : tables.merit) os << r.list << ',' << r.rank << ',' << r.cand << '\n';
  write_file(dir / "merit.csv", os.str());

  os.str({});
  os << "course_id,list_id,category,capacity\n";
  for (const auto& r : tables.courses)
    os << r.course << ',' << r.list << ',' << r.category << ',' << r.capacity << '\n';
  write_file(dir / "courses.csv", os.str());

  os.str({});
  os << "course_id,female_quota\n";
  for (const auto& r : tables.quotas) os << r.course << ',' << r.quota << '\n';
  write_file(dir / "quotas.csv", os.str());

  os.str({});
  os << "candidate_id,is_female,categories\n";
  for (const auto& r : tables.candidates) {
    os << r.cand << ',' << r.is_female << ',';
    for (std::size_t i = 0; i < r.categories.size(); ++i)
      os << (i ? ";" : "") << r.categories[i];
    os << '\n';
  }
  write_file(dir / "candidates.csv", os.str());

  os.str({});
  os << "candidate_id,pref_rank,course_id\n";
  for (const auto& r : tables.prefs) os << r.cand << ',' << r.rank << ',' << r.course << '\n';
  write_file(dir / "prefs.csv", os.str());
}

}  // namespace seatalloc
