#include "seatalloc/validate.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "seatalloc/reservation.hpp"

namespace seatalloc {

const char* to_string(DiagCode code) {
  switch (code) {
    case DiagCode::ParseError: return "ParseError";
    case DiagCode::BadHeader: return "BadHeader";
    case DiagCode::DuplicateRank: return "DuplicateRank";
    case DiagCode::DuplicateId: return "DuplicateId";
    case DiagCode::DuplicatePool: return "DuplicatePool";
    case DiagCode::DuplicatePreference: return "DuplicatePreference";
    case DiagCode::UnknownId: return "UnknownId";
    case DiagCode::UnknownCategory: return "UnknownCategory";
    case DiagCode::CandidateNotInGoverningList: return "CandidateNotInGoverningList";
    case DiagCode::NegativeCapacity: return "NegativeCapacity";
    case DiagCode::MissingUnreservedPool: return "MissingUnreservedPool";
    case DiagCode::InconsistentGoverningList: return "InconsistentGoverningList";
    case DiagCode::ReservedName: return "ReservedName";
    case DiagCode::InfeasibleParams: return "InfeasibleParams";
  }
  return "UnknownDiag";
}

std::string format(const Diagnostic& d) {
  std::string out = to_string(d.code);
  if (!d.where.empty()) {
    out += " at ";
    out += d.where;
  }
  out += ": ";
  out += d.message;
  return out;
}

namespace {

using IdMap = std::unordered_map<std::string, std::uint32_t>;

bool reserved_name(std::string_view s) {
  return s == kUnreservedName || s == kFemaleSupName;
}

struct Builder {
  const RawTables& raw;
  bool enable_quotas;
  std::vector<Diagnostic>& errors;

  IdMap cand_ids, list_ids, course_ids, category_ids;
  Instance inst;

  void fail(DiagCode code, const std::string& where, std::string message) {
    errors.push_back(Diagnostic{code, where, std::move(message)});
  }

  // --- candidates.csv -------------------------------------------------------
  void collect_candidates() {
    for (const auto& row : raw.candidates) {
      if (!cand_ids.emplace(row.cand, static_cast<std::uint32_t>(inst.candidates.size()))
               .second) {
        fail(DiagCode::DuplicateId, row.where, "candidate '" + row.cand + "' declared twice");
        continue;
      }
      if (row.is_female != 0 && row.is_female != 1)
        fail(DiagCode::ParseError, row.where,
             "is_female must be 0 or 1, got " + std::to_string(row.is_female));
      Candidate c;
      c.name = row.cand;
      c.female = row.is_female == 1;
      inst.candidates.push_back(std::move(c));
    }
  }

  // --- category forest ------------------------------------------------------
  // Categories are declared by course rows; nesting is spelled with dot paths
  // ("RES.PWD" sits inside "RES"). Ancestors are materialized implicitly so
  // the containment relation is always a forest.
  CategoryId intern_category(const std::string& name) {
    auto it = category_ids.find(name);
    if (it != category_ids.end()) return it->second;
    CategoryId parent = kUnreserved;
    std::uint32_t depth = 1;
    if (auto dot = name.rfind('.'); dot != std::string::npos) {
      parent = intern_category(name.substr(0, dot));
      depth = inst.categories[parent].depth + 1;
      // A dot path nests inside its prefix; top-level categories hang off
      // UNRESERVED only notionally (parent kNone below).
    } else {
      parent = kNone;
    }
    CategoryId id = static_cast<CategoryId>(inst.categories.size());
    inst.categories.push_back(Category{name, parent, depth});
    category_ids.emplace(name, id);
    return id;
  }

  void collect_categories() {
    inst.categories.push_back(Category{kUnreservedName, kNone, 0});
    category_ids.emplace(kUnreservedName, kUnreserved);
    for (const auto& row : raw.courses) {
      if (row.category == kFemaleSupName) {
        fail(DiagCode::ReservedName, row.where,
             std::string("category name '") + kFemaleSupName + "' is reserved for the engine");
        continue;
      }
      if (row.category != kUnreservedName) intern_category(row.category);
    }
  }

  // --- merit.csv ------------------------------------------------------------
  void collect_lists() {
    struct Entry {
      std::int64_t rank;
      CandidateId cand;
    };
    std::vector<std::vector<Entry>> entries;
    for (const auto& row : raw.merit) {
      auto [it, inserted] =
          list_ids.emplace(row.list, static_cast<std::uint32_t>(entries.size()));
      if (inserted) entries.emplace_back();
      auto cit = cand_ids.find(row.cand);
      if (cit == cand_ids.end()) {
        fail(DiagCode::UnknownId, row.where,
             "merit list '" + row.list + "' ranks unknown candidate '" + row.cand + "'");
        continue;
      }
      if (row.rank < 1) {
        fail(DiagCode::ParseError, row.where,
             "rank must be >= 1, got " + std::to_string(row.rank));
        continue;
      }
      entries[it->second].push_back(Entry{row.rank, cit->second});
    }
    inst.lists.resize(entries.size());
    for (auto& [name, t] : list_ids) inst.lists[t].name = name;
    for (std::uint32_t t = 0; t < entries.size(); ++t) {
      auto& es = entries[t];
      std::stable_sort(es.begin(), es.end(),
                       [](const Entry& a, const Entry& b) { return a.rank < b.rank; });
      MeritList& list = inst.lists[t];
      list.rank_of.assign(inst.candidates.size(), kNone);
      for (std::size_t i = 0; i < es.size(); ++i) {
        if (i > 0 && es[i].rank == es[i - 1].rank) {
          fail(DiagCode::DuplicateRank, "list " + list.name,
               "rank " + std::to_string(es[i].rank) + " assigned to both '" +
                   inst.candidates[es[i - 1].cand].name + "' and '" +
                   inst.candidates[es[i].cand].name + "'");
          continue;
        }
        if (list.rank_of[es[i].cand] != kNone) {
          fail(DiagCode::DuplicateRank, "list " + list.name,
               "candidate '" + inst.candidates[es[i].cand].name + "' appears twice");
          continue;
        }
        list.rank_of[es[i].cand] = static_cast<std::uint32_t>(list.ranking.size() + 1);
        list.ranking.push_back(es[i].cand);
      }
    }
  }

  // --- courses.csv + quotas.csv ---------------------------------------------
  void collect_courses() {
    for (const auto& row : raw.courses) {
      auto [it, inserted] =
          course_ids.emplace(row.course, static_cast<std::uint32_t>(inst.courses.size()));
      if (inserted) {
        inst.courses.push_back(Course{});
        inst.courses.back().name = row.course;
      }
      Course& course = inst.courses[it->second];

      auto lit = list_ids.find(row.list);
      if (lit == list_ids.end()) {
        fail(DiagCode::UnknownId, row.where,
             "course '" + row.course + "' names unknown merit list '" + row.list + "'");
        continue;
      }
      if (course.list == kNone) course.list = lit->second;
      else if (course.list != lit->second) {
        fail(DiagCode::InconsistentGoverningList, row.where,
             "course '" + row.course + "' is governed by '" + inst.lists[course.list].name +
                 "' but this row names '" + row.list + "'");
        continue;
      }

      if (row.capacity < 0) {
        fail(DiagCode::NegativeCapacity, row.where,
             "capacity " + std::to_string(row.capacity) + " for course '" + row.course + "'");
        continue;
      }

      auto cit = category_ids.find(row.category);
      if (cit == category_ids.end()) continue;  // ReservedName already reported
      CategoryId cat = cit->second;
      for (PoolId p : course.pools) {
        if (inst.pools[p].category == cat) {
          fail(DiagCode::DuplicatePool, row.where,
               "course '" + row.course + "' declares category '" + row.category + "' twice");
          cat = kNone;
          break;
        }
      }
      if (cat == kNone) continue;

      PoolId pid = static_cast<PoolId>(inst.pools.size());
      inst.pools.push_back(SeatPool{it->second, cat, lit->second,
                                    static_cast<std::uint32_t>(row.capacity), false});
      course.pools.push_back(pid);
      if (cat == kUnreserved) course.unreserved = pid;
    }

    for (std::uint32_t j = 0; j < inst.courses.size(); ++j) {
      if (inst.courses[j].unreserved == kNone)
        fail(DiagCode::MissingUnreservedPool, "course " + inst.courses[j].name,
             "every course needs an UNRESERVED row (capacity 0 is fine)");
    }
  }

  void collect_quotas() {
    if (!enable_quotas) return;  // quota rows are ignored wholesale when off
    std::unordered_set<std::string> seen;
    for (const auto& row : raw.quotas) {
      auto it = course_ids.find(row.course);
      if (it == course_ids.end()) {
        fail(DiagCode::UnknownId, row.where, "quota for unknown course '" + row.course + "'");
        continue;
      }
      if (!seen.insert(row.course).second) {
        fail(DiagCode::DuplicateId, row.where,
             "course '" + row.course + "' has two quota rows");
        continue;
      }
      if (row.quota < 0) {
        fail(DiagCode::NegativeCapacity, row.where,
             "female_quota " + std::to_string(row.quota) + " for course '" + row.course + "'");
        continue;
      }
      inst.courses[it->second].female_quota = static_cast<std::uint32_t>(row.quota);
    }
    bool any = false;
    for (const Course& c : inst.courses) any = any || c.female_quota > 0;
    if (!any) return;
    // Virtual category + one capacity-0 female-only pool per quota course;
    // seats appear dynamically during a run.
    CategoryId sup = static_cast<CategoryId>(inst.categories.size());
    inst.categories.push_back(Category{kFemaleSupName, kNone, 1});
    category_ids.emplace(kFemaleSupName, sup);
    for (std::uint32_t j = 0; j < inst.courses.size(); ++j) {
      Course& course = inst.courses[j];
      if (course.female_quota == 0) continue;
      PoolId pid = static_cast<PoolId>(inst.pools.size());
      inst.pools.push_back(SeatPool{j, sup, course.list, 0, true});
      course.pools.push_back(pid);
      course.female_sup = pid;
    }
  }

  // --- candidate categories + prefs -----------------------------------------
  void collect_memberships() {
    for (const auto& row : raw.candidates) {
      auto idit = cand_ids.find(row.cand);
      if (idit == cand_ids.end()) continue;
      Candidate& cand = inst.candidates[idit->second];
      if (!cand.categories.empty()) continue;  // duplicate row already reported
      std::unordered_set<CategoryId> held;
      for (const std::string& name : row.categories) {
        if (reserved_name(name)) {
          fail(DiagCode::ReservedName, row.where,
               "candidate '" + row.cand + "' claims reserved category name '" + name + "'");
          continue;
        }
        auto cit = category_ids.find(name);
        if (cit == category_ids.end()) {
          fail(DiagCode::UnknownCategory, row.where,
               "candidate '" + row.cand + "' claims category '" + name +
                   "' not declared by any course");
          continue;
        }
        // Membership closes upward: sitting in a nested category implies
        // sitting in every enclosing one.
        for (CategoryId g = cit->second; g != kNone && g != kUnreserved;
             g = inst.categories[g].parent)
          held.insert(g);
      }
      cand.categories.assign(held.begin(), held.end());
      std::sort(cand.categories.begin(), cand.categories.end(),
                [this](CategoryId a, CategoryId b) {
                  const Category& ca = inst.categories[a];
                  const Category& cb = inst.categories[b];
                  return ca.depth != cb.depth ? ca.depth < cb.depth : a < b;
                });
    }
  }

  void collect_prefs() {
    struct Entry {
      std::int64_t rank;
      CourseId course;
      const std::string* where;
    };
    std::vector<std::vector<Entry>> per_cand(inst.candidates.size());
    for (const auto& row : raw.prefs) {
      auto cit = cand_ids.find(row.cand);
      if (cit == cand_ids.end()) {
        fail(DiagCode::UnknownId, row.where,
             "preference for unknown candidate '" + row.cand + "'");
        continue;
      }
      auto jit = course_ids.find(row.course);
      if (jit == course_ids.end()) {
        fail(DiagCode::UnknownId, row.where,
             "candidate '" + row.cand + "' prefers unknown course '" + row.course + "'");
        continue;
      }
      if (row.rank < 1) {
        fail(DiagCode::ParseError, row.where,
             "pref_rank must be >= 1, got " + std::to_string(row.rank));
        continue;
      }
      per_cand[cit->second].push_back(Entry{row.rank, jit->second, &row.where});
    }
    for (std::uint32_t c = 0; c < per_cand.size(); ++c) {
      auto& es = per_cand[c];
      std::stable_sort(es.begin(), es.end(),
                       [](const Entry& a, const Entry& b) { return a.rank < b.rank; });
      std::unordered_set<CourseId> seen;
      Candidate& cand = inst.candidates[c];
      for (std::size_t i = 0; i < es.size(); ++i) {
        if (i > 0 && es[i].rank == es[i - 1].rank) {
          fail(DiagCode::DuplicateRank, *es[i].where,
               "candidate '" + cand.name + "' has two preferences at rank " +
                   std::to_string(es[i].rank));
          continue;
        }
        if (!seen.insert(es[i].course).second) {
          fail(DiagCode::DuplicatePreference, *es[i].where,
               "candidate '" + cand.name + "' lists course '" +
                   inst.courses[es[i].course].name + "' twice");
          continue;
        }
        cand.raw_prefs.push_back(es[i].course);
      }
    }
  }

  // Anyone listing a course must be ranked by its governing list — otherwise
  // the engine could neither queue nor seat them meaningfully.
  void check_governing_membership() {
    for (std::uint32_t c = 0; c < inst.candidates.size(); ++c) {
      for (CourseId j : inst.candidates[c].raw_prefs) {
        ListId t = inst.courses[j].list;
        if (t == kNone) continue;  // course row errors already reported
        if (inst.lists[t].rank_of[c] == kNone)
          fail(DiagCode::CandidateNotInGoverningList, "candidate " + inst.candidates[c].name,
               "lists course '" + inst.courses[j].name + "' but is absent from list '" +
                   inst.lists[t].name + "'");
      }
    }
  }
};

}  // namespace

ValidationResult validate_instance(const RawTables& raw, bool enable_quotas) {
  ValidationResult result;
  Builder b{raw, enable_quotas, result.errors, {}, {}, {}, {}, {}};
  b.inst.quotas_enabled = enable_quotas;

  b.collect_candidates();
  b.collect_categories();
  b.collect_lists();
  b.collect_courses();
  b.collect_quotas();
  b.collect_memberships();
  b.collect_prefs();
  b.check_governing_membership();

  if (!result.errors.empty()) return result;

  std::vector<std::vector<PoolId>> expanded(b.inst.candidates.size());
  for (std::uint32_t c = 0; c < b.inst.candidates.size(); ++c)
    expanded[c] = expand_preferences(b.inst.candidates[c], b.inst);
  b.inst.finalize(expanded);
  result.instance = std::move(b.inst);
  return result;
}

}  // namespace seatalloc
