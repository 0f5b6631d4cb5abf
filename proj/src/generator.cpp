#include "seatalloc/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

namespace seatalloc {

namespace {

constexpr double kCategoryRowChance = 0.5;  // course declares a reserved pool
constexpr double kClaimChance = 0.3;        // candidate holds a category

std::string list_name(std::uint32_t t) { return "L" + std::to_string(t + 1); }

// Preference-list length; geometric-ish around mean_prefs when requested,
// otherwise uniform on [0, max_prefs].
std::uint32_t draw_pref_len(const GenParams& p, std::uint32_t m, Rng& rng) {
  if (m == 0) return 0;
  std::uint32_t len;
  if (p.mean_prefs > 1.0) {
    double shifted = -(p.mean_prefs - 1.0) * std::log(1.0 - rng.unit());
    len = 1 + static_cast<std::uint32_t>(std::min(shifted, 1e6));
  } else {
    len = rng.below(p.max_prefs + 1);
  }
  return std::min(len, m);
}

// Distinct course indices, biased toward the front of the course list so a
// few courses stay oversubscribed.  Falls back to shuffle-and-take when the
// request covers most of the range.
std::vector<std::uint32_t> draw_courses(std::uint32_t len, std::uint32_t m, Rng& rng) {
  std::vector<std::uint32_t> picked;
  if (len * 2 >= m) {
    picked.resize(m);
    for (std::uint32_t j = 0; j < m; ++j) picked[j] = j;
    rng.shuffle(picked);
    picked.resize(len);
    return picked;
  }
  std::set<std::uint32_t> seen;
  while (picked.size() < len) {
    double u = rng.unit();
    auto idx = static_cast<std::uint32_t>(u * u * m);
    if (idx >= m) idx = m - 1;
    if (seen.insert(idx).second) picked.push_back(idx);
  }
  return picked;
}

}  // namespace

RawTables generate_tables(const GenParams& p, Rng& rng) {
  if (p.courses > 0 && p.lists == 0)
    throw InfeasibleParamsError("courses need a governing list, but lists == 0");
  if (p.courses > 0 && p.candidates == 0)
    throw InfeasibleParamsError("courses need non-empty merit lists, but candidates == 0");
  if (p.min_capacity > p.max_capacity)
    throw InfeasibleParamsError("min_capacity exceeds max_capacity");

  RawTables t;

  // Category paths: a handful of top-level groups, some with one child.
  std::vector<std::string> paths;
  if (p.reservations && p.max_categories > 0) {
    std::uint32_t base = 1 + rng.below(p.max_categories);
    for (std::uint32_t g = 0; g < base; ++g) {
      std::string name = "G" + std::to_string(g + 1);
      paths.push_back(name);
      if (rng.chance(p.nested_chance)) paths.push_back(name + ".N");
    }
  }

  // Courses: round-robin over lists, one unreserved pool each, reserved pools
  // drawn per category path.  Paths a course declares become claimable.
  std::set<std::string> declared;
  std::vector<std::string> course_names(p.courses);
  for (std::uint32_t j = 0; j < p.courses; ++j) {
    course_names[j] = "C" + std::to_string(j + 1);
    std::string list = list_name(j % p.lists);
    t.courses.push_back({course_names[j], list, kUnreservedName,
                         static_cast<std::int64_t>(rng.range(p.min_capacity, p.max_capacity)),
                         {}});
    for (const std::string& path : paths)
      if (rng.chance(kCategoryRowChance)) {
        t.courses.push_back({course_names[j], list, path,
                             static_cast<std::int64_t>(rng.range(p.min_capacity, p.max_capacity)),
                             {}});
        declared.insert(path);
      }
  }

  // Claimable names: every declared path plus all its dot-ancestors.
  std::vector<std::string> claimable;
  {
    std::set<std::string> names;
    for (const std::string& path : declared) {
      std::size_t dot = 0;
      while ((dot = path.find('.', dot)) != std::string::npos) {
        names.insert(path.substr(0, dot));
        ++dot;
      }
      names.insert(path);
    }
    claimable.assign(names.begin(), names.end());
  }

  if (p.quotas && p.max_quota > 0)
    for (std::uint32_t j = 0; j < p.courses; ++j)
      if (rng.chance(p.quota_course_share))
        t.quotas.push_back(
            {course_names[j], static_cast<std::int64_t>(1 + rng.below(p.max_quota)), {}});

  // Candidates with category claims and skewed distinct preferences.
  std::vector<std::vector<std::uint32_t>> prefs(p.candidates);
  for (std::uint32_t i = 0; i < p.candidates; ++i) {
    RawTables::CandidateRow row{"c" + std::to_string(i + 1), rng.chance(p.female_share), {}, {}};
    for (const std::string& name : claimable)
      if (rng.chance(kClaimChance)) row.categories.push_back(name);
    t.candidates.push_back(std::move(row));

    prefs[i] = draw_courses(draw_pref_len(p, p.courses, rng), p.courses, rng);
    for (std::uint32_t r = 0; r < prefs[i].size(); ++r)
      t.prefs.push_back({t.candidates[i].cand, static_cast<std::int64_t>(r + 1),
                         course_names[prefs[i][r]], {}});
  }

  // Merit lists: everyone who ranked a course of the list must appear in it;
  // the rest join with probability list_membership. A list some course
  // references must not end up empty, or the course rows dangle.
  for (std::uint32_t l = 0; l < p.lists; ++l) {
    std::vector<std::uint32_t> members;
    for (std::uint32_t i = 0; i < p.candidates; ++i) {
      bool needed = false;
      for (std::uint32_t j : prefs[i]) needed = needed || j % p.lists == l;
      if (needed || rng.chance(p.list_membership)) members.push_back(i);
    }
    bool governs_course = l < p.courses;
    if (members.empty() && governs_course && p.candidates > 0) members.push_back(0);
    rng.shuffle(members);
    for (std::uint32_t r = 0; r < members.size(); ++r)
      t.merit.push_back({list_name(l), t.candidates[members[r]].cand,
                         static_cast<std::int64_t>(r + 1), {}});
  }

  return t;
}

}  // namespace seatalloc
