#include "seatalloc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "seatalloc/allocator.hpp"
#include "seatalloc/instance.hpp"

namespace seatalloc {

namespace {

// Builds a two-list instance in memory, skipping the CSV/validation pipeline:
// the string tables for a million candidates would dwarf the engine arrays.
// Shape: one unreserved pool per course, geometric-ish preference lengths,
// popularity skewed toward low course indices. The course count is floored at
// 60 and capacities average n/m seats, so both the preference-length
// truncation (at min(m, 60)) and the seats-per-candidate supply ratio are the
// same at every ladder size — per-candidate op rates stay comparable and the
// linearity of op_counter in n is measurable.
Instance build_instance(std::uint32_t n, double mean_prefs, Rng& rng) {
  Instance inst;
  std::uint32_t m = std::max<std::uint32_t>(60, n / 50);
  std::uint32_t max_len = std::min<std::uint32_t>(m, 60);
  std::uint32_t mean_cap = std::max<std::uint32_t>(1, n / m);

  inst.categories.push_back(Category{kUnreservedName, kNone, 0});
  inst.lists.resize(2);
  inst.courses.resize(m);
  inst.pools.resize(m);
  for (std::uint32_t j = 0; j < m; ++j) {
    ListId l = j % 2;
    inst.courses[j] =
        Course{"C" + std::to_string(j + 1), l, j, kNone, 0, {j}};
    auto cap = static_cast<std::uint32_t>(1 + rng.below(2 * mean_cap - 1));
    inst.pools[j] = SeatPool{j, kUnreserved, l, cap, false};
  }

  inst.candidates.resize(n);
  std::vector<std::vector<PoolId>> expanded(n);
  std::vector<std::uint32_t> scratch;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t len = 1;
    if (mean_prefs > 1.0) {
      double shifted = -(mean_prefs - 1.0) * std::log(1.0 - rng.unit());
      len += static_cast<std::uint32_t>(std::min(shifted, 1e6));
    }
    len = std::min(len, max_len);
    scratch.clear();
    while (scratch.size() < len) {
      double u = rng.unit();
      auto idx = static_cast<std::uint32_t>(u * u * m);
      if (idx >= m) idx = m - 1;
      if (std::find(scratch.begin(), scratch.end(), idx) == scratch.end())
        scratch.push_back(idx);
    }
    expanded[i].assign(scratch.begin(), scratch.end());
  }

  for (MeritList& list : inst.lists) {
    list.ranking.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) list.ranking[i] = i;
    rng.shuffle(list.ranking);
    list.rank_of.assign(n, kNone);
    for (std::uint32_t r = 0; r < n; ++r) list.rank_of[list.ranking[r]] = r + 1;
  }

  inst.finalize(expanded);
  return inst;
}

}  // namespace

std::vector<BenchPoint> run_bench(const std::vector<std::uint32_t>& sizes,
                                  double mean_prefs, std::uint64_t seed) {
  std::vector<BenchPoint> out;
  for (std::uint32_t n : sizes) {
    Rng rng(seed + n);
    Instance inst = build_instance(n, mean_prefs, rng);

    BenchPoint pt;
    pt.candidates = n;
    pt.work = inst.pool_count() + inst.pref_pool.size();
    for (const MeritList& list : inst.lists) pt.work += list.ranking.size();

    AllocationState st(inst);
    auto t0 = std::chrono::steady_clock::now();
    allocate_joint(st);
    auto t1 = std::chrono::steady_clock::now();
    pt.op_counter = st.op_counter;
    pt.ratio = static_cast<double>(st.op_counter) / static_cast<double>(pt.work);
    pt.seconds = std::chrono::duration<double>(t1 - t0).count();

    for (ListId t = 0; t < inst.list_count(); ++t)
      pt.delinked_ops += allocate_single_list(inst, t).op_counter;
    out.push_back(pt);
  }
  return out;
}

}  // namespace seatalloc
