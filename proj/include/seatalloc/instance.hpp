#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seatalloc/common.hpp"

namespace seatalloc {

// A strict total order of candidates produced by one examination.
// rank_of is the inverse permutation: rank_of[cand] is 1-based, kNone when the
// candidate does not appear in this list.
struct MeritList {
  std::string name;
  std::vector<CandidateId> ranking;
  std::vector<std::uint32_t> rank_of;
};

// Categories form a forest (nesting expressed with dot-path names, e.g.
// "RES.PWD" sits inside "RES"). Index 0 is always UNRESERVED; the virtual
// FEMALE_SUPERNUMERARY category, when quotas are enabled, is appended last.
struct Category {
  std::string name;
  CategoryId parent = kNone;
  std::uint32_t depth = 0;
};

inline constexpr CategoryId kUnreserved = 0;
inline constexpr const char* kUnreservedName = "UNRESERVED";
inline constexpr const char* kFemaleSupName = "FEMALE_SUPERNUMERARY";

// The unit of capacity: one (course, category) pair. female_only marks the
// dynamically sized supernumerary pool.
struct SeatPool {
  CourseId course = kNone;
  CategoryId category = kNone;
  ListId list = kNone;
  std::uint32_t capacity = 0;
  bool female_only = false;
};

struct Course {
  std::string name;
  ListId list = kNone;
  PoolId unreserved = kNone;
  PoolId female_sup = kNone;  // kNone unless quotas enabled and quota > 0
  std::uint32_t female_quota = 0;
  std::vector<PoolId> pools;
};

struct Candidate {
  std::string name;
  bool female = false;
  std::vector<CategoryId> categories;  // held beyond UNRESERVED; (depth, id) order
  std::vector<CourseId> raw_prefs;     // as submitted, before expansion
};

// One row of a candidate's per-list preference view. rank_in_list and
// overall_rank are 1-based; concatenating all views sorted by overall_rank
// reproduces the expanded joint preference list exactly.
struct PerListEntry {
  std::uint32_t rank_in_list = 0;
  std::uint32_t overall_rank = 0;
  PoolId pool = kNone;
};

// Validated, immutable problem input. Engine structures are flat arrays over
// the dense ids assigned at validation.
struct Instance {
  std::vector<MeritList> lists;
  std::vector<Category> categories;
  std::vector<Course> courses;
  std::vector<SeatPool> pools;
  std::vector<Candidate> candidates;
  bool quotas_enabled = false;

  // Expanded joint preferences (a pool per overall rank), CSR by candidate.
  std::vector<std::uint32_t> pref_off;  // size candidates+1
  std::vector<PoolId> pref_pool;

  // Per-list views, CSR by candidate, entries in overall-rank order.
  struct ViewSlot {
    std::uint32_t overall_rank = 0;  // 1-based
    PoolId pool = kNone;
  };
  struct View {
    std::vector<std::uint32_t> off;  // size candidates+1
    std::vector<ViewSlot> slots;
    // Candidates with a non-empty view, in this list's merit order — the pass
    // iterates exactly these, keeping engine work proportional to view sizes
    // rather than to raw merit-list lengths.
    std::vector<CandidateId> scan_order;
  };
  std::vector<View> views;  // one per list

  std::size_t candidate_count() const { return candidates.size(); }
  std::size_t pool_count() const { return pools.size(); }
  std::size_t list_count() const { return lists.size(); }
  std::size_t course_count() const { return courses.size(); }

  std::span<const PoolId> prefs(CandidateId c) const {
    return {pref_pool.data() + pref_off[c], pref_pool.data() + pref_off[c + 1]};
  }
  std::span<const ViewSlot> view(ListId t, CandidateId c) const {
    const View& v = views[t];
    return {v.slots.data() + v.off[c], v.slots.data() + v.off[c + 1]};
  }
  // Pool of a candidate's 1-based overall rank.
  PoolId pool_at_rank(CandidateId c, std::uint32_t rank) const {
    return pref_pool[pref_off[c] + rank - 1];
  }
  std::uint32_t pref_count(CandidateId c) const { return pref_off[c + 1] - pref_off[c]; }

  std::string pool_label(PoolId p) const;

  // Builds pref_off/pref_pool from per-candidate expanded lists, then views.
  void finalize(const std::vector<std::vector<PoolId>>& expanded);
};

// Decomposes one expanded joint preference list into per-list views
// (one vector per list id, possibly empty).
std::vector<std::vector<PerListEntry>> build_per_list_views(
    std::span<const PoolId> joint_prefs, const std::vector<SeatPool>& pools,
    std::size_t list_count);

}  // namespace seatalloc
