#pragma once

// Table builders, engine-run wrappers and a counterexample shrinker shared by
// the test mains.
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "seatalloc/allocator.hpp"
#include "seatalloc/validate.hpp"

namespace testsupport {

using namespace seatalloc;

// Fluent RawTables construction; ranks are assigned by position.
struct TableBuilder {
  RawTables t;

  TableBuilder& merit(const std::string& list, std::initializer_list<const char*> cands) {
    std::int64_t rank = 1;
    for (const char* c : cands) t.merit.push_back({list, c, rank++, "test"});
    return *this;
  }
  TableBuilder& course(const std::string& course, const std::string& list,
                       const std::string& category, std::int64_t capacity) {
    t.courses.push_back({course, list, category, capacity, "test"});
    return *this;
  }
  TableBuilder& quota(const std::string& course, std::int64_t q) {
    t.quotas.push_back({course, q, "test"});
    return *this;
  }
  TableBuilder& cand(const std::string& name, bool female = false,
                     std::vector<std::string> categories = {}) {
    t.candidates.push_back({name, female, std::move(categories), "test"});
    return *this;
  }
  TableBuilder& prefs(const std::string& cand, std::initializer_list<const char*> courses) {
    std::int64_t rank = 1;
    for (const char* c : courses) t.prefs.push_back({cand, rank++, c, "test"});
    return *this;
  }
};

// Validation that must succeed; aborts loudly when it does not so the test
// failure points at the fixture rather than a null instance.
inline Instance require_valid(const RawTables& tables, bool quotas = false) {
  ValidationResult vr = validate_instance(tables, quotas);
  if (!vr.ok()) {
    for (const Diagnostic& d : vr.errors) std::printf("fixture invalid: %s\n", format(d).c_str());
    std::abort();
  }
  return std::move(*vr.instance);
}

inline std::vector<DiagCode> codes_of(const RawTables& tables, bool quotas = false) {
  ValidationResult vr = validate_instance(tables, quotas);
  std::vector<DiagCode> codes;
  for (const Diagnostic& d : vr.errors) codes.push_back(d.code);
  return codes;
}

inline bool has_code(const std::vector<DiagCode>& codes, DiagCode c) {
  return std::find(codes.begin(), codes.end(), c) != codes.end();
}

inline CandidateId cand_id(const Instance& inst, const std::string& name) {
  for (CandidateId c = 0; c < inst.candidate_count(); ++c)
    if (inst.candidates[c].name == name) return c;
  std::printf("no candidate named %s\n", name.c_str());
  std::abort();
}

inline CourseId course_id(const Instance& inst, const std::string& name) {
  for (CourseId j = 0; j < inst.course_count(); ++j)
    if (inst.courses[j].name == name) return j;
  std::printf("no course named %s\n", name.c_str());
  std::abort();
}

inline PoolId pool_id(const Instance& inst, const std::string& course,
                      const std::string& category = kUnreservedName) {
  for (PoolId p = 0; p < inst.pool_count(); ++p)
    if (inst.courses[inst.pools[p].course].name == course &&
        inst.categories[inst.pools[p].category].name == category)
      return p;
  std::printf("no pool %s/%s\n", course.c_str(), category.c_str());
  std::abort();
}

struct EngineRun {
  AllotmentResult result;
  std::vector<AuditEvent> events;
  std::vector<std::uint32_t> final_capacity;  // per pool, includes supernumerary growth
  std::uint64_t op_counter = 0;
  std::uint64_t budget_base = 0;
};

inline EngineRun run_engine(const Instance& inst, const std::vector<ListId>& order) {
  VectorSink sink;
  AllocationState st(inst, &sink);
  allocate_joint(st, order);
  EngineRun run;
  run.result = snapshot(st);
  run.events = std::move(sink.events);
  for (const PoolState& ps : st.pools) run.final_capacity.push_back(ps.capacity);
  run.op_counter = st.op_counter;
  run.budget_base = st.budget_base();
  return run;
}

inline EngineRun run_engine(const Instance& inst) {
  std::vector<ListId> order;
  for (ListId t = 0; t < inst.list_count(); ++t) order.push_back(t);
  return run_engine(inst, order);
}

// Greedy fixture shrinker: repeatedly drops candidates, courses, preference
// rows and capacity points while `interesting` keeps returning true on the
// still-valid reduced tables. Deterministic, fixpoint-terminated.
template <typename Pred>
RawTables shrink_counterexample(RawTables tables, bool quotas, Pred interesting) {
  auto still_interesting = [&](const RawTables& cand) {
    ValidationResult vr = validate_instance(cand, quotas);
    return vr.ok() && interesting(*vr.instance);
  };

  bool shrunk = true;
  while (shrunk) {
    shrunk = false;

    for (std::size_t i = 0; i < tables.candidates.size(); ++i) {
      RawTables next = tables;
      std::string name = next.candidates[i].cand;
      next.candidates.erase(next.candidates.begin() + i);
      std::erase_if(next.merit, [&](const auto& r) { return r.cand == name; });
      std::erase_if(next.prefs, [&](const auto& r) { return r.cand == name; });
      if (still_interesting(next)) {
        tables = std::move(next);
        shrunk = true;
        break;
      }
    }
    if (shrunk) continue;

    std::set<std::string> courses;
    for (const auto& r : tables.courses) courses.insert(r.course);
    for (const std::string& name : courses) {
      RawTables next = tables;
      std::erase_if(next.courses, [&](const auto& r) { return r.course == name; });
      std::erase_if(next.quotas, [&](const auto& r) { return r.course == name; });
      std::erase_if(next.prefs, [&](const auto& r) { return r.course == name; });
      if (still_interesting(next)) {
        tables = std::move(next);
        shrunk = true;
        break;
      }
    }
    if (shrunk) continue;

    // Whole merit lists; validation rejects the drop while a course still
    // references the list, so only inert lists disappear.
    std::set<std::string> lists;
    for (const auto& r : tables.merit) lists.insert(r.list);
    for (const std::string& name : lists) {
      RawTables next = tables;
      std::erase_if(next.merit, [&](const auto& r) { return r.list == name; });
      if (still_interesting(next)) {
        tables = std::move(next);
        shrunk = true;
        break;
      }
    }
    if (shrunk) continue;

    // Single memberships; rank gaps are legal, so no renumbering needed.
    for (std::size_t i = 0; i < tables.merit.size(); ++i) {
      RawTables next = tables;
      next.merit.erase(next.merit.begin() + i);
      if (still_interesting(next)) {
        tables = std::move(next);
        shrunk = true;
        break;
      }
    }
    if (shrunk) continue;

    for (std::size_t i = 0; i < tables.prefs.size(); ++i) {
      RawTables next = tables;
      next.prefs.erase(next.prefs.begin() + i);
      // Close the rank gap so the remaining rows still validate.
      std::int64_t rank = 0;
      std::string cand = tables.prefs[i].cand;
      for (auto& r : next.prefs)
        if (r.cand == cand) r.rank = ++rank;
      if (still_interesting(next)) {
        tables = std::move(next);
        shrunk = true;
        break;
      }
    }
    if (shrunk) continue;

    for (std::size_t i = 0; i < tables.courses.size(); ++i) {
      if (tables.courses[i].capacity == 0) continue;
      RawTables next = tables;
      --next.courses[i].capacity;
      if (still_interesting(next)) {
        tables = std::move(next);
        shrunk = true;
        break;
      }
    }
  }
  return tables;
}

}  // namespace testsupport
