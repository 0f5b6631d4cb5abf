#include "seatalloc/instance.hpp"

#include <cassert>

namespace seatalloc {

std::string Instance::pool_label(PoolId p) const {
  const SeatPool& pool = pools[p];
  return courses[pool.course].name + "/" + categories[pool.category].name;
}

void Instance::finalize(const std::vector<std::vector<PoolId>>& expanded) {
  const std::size_t n = candidates.size();
  assert(expanded.size() == n);

  pref_off.assign(n + 1, 0);
  for (std::size_t c = 0; c < n; ++c)
    pref_off[c + 1] = pref_off[c] + static_cast<std::uint32_t>(expanded[c].size());
  pref_pool.clear();
  pref_pool.reserve(pref_off[n]);
  for (const auto& list : expanded) pref_pool.insert(pref_pool.end(), list.begin(), list.end());

  // Per-list views: two passes per list (counts, then fill) keep this linear
  // in the total expanded preference length.
  views.assign(lists.size(), View{});
  for (auto& v : views) v.off.assign(n + 1, 0);
  for (std::size_t c = 0; c < n; ++c)
    for (PoolId p : prefs(static_cast<CandidateId>(c))) ++views[pools[p].list].off[c + 1];
  for (auto& v : views) {
    for (std::size_t c = 0; c < n; ++c) v.off[c + 1] += v.off[c];
    v.slots.assign(v.off[n], ViewSlot{});
  }
  std::vector<std::uint32_t> cursor(lists.size());
  for (std::size_t c = 0; c < n; ++c) {
    for (ListId t = 0; t < lists.size(); ++t) cursor[t] = views[t].off[c];
    std::uint32_t rank = 0;
    for (PoolId p : prefs(static_cast<CandidateId>(c))) {
      const ListId t = pools[p].list;
      views[t].slots[cursor[t]++] = ViewSlot{++rank, p};
    }
  }

  for (ListId t = 0; t < lists.size(); ++t) {
    View& v = views[t];
    v.scan_order.clear();
    for (CandidateId c : lists[t].ranking)
      if (v.off[c + 1] > v.off[c]) v.scan_order.push_back(c);
  }
}

std::vector<std::vector<PerListEntry>> build_per_list_views(
    std::span<const PoolId> joint_prefs, const std::vector<SeatPool>& pools,
    std::size_t list_count) {
  std::vector<std::vector<PerListEntry>> out(list_count);
  std::uint32_t overall = 0;
  for (PoolId p : joint_prefs) {
    ++overall;
    auto& view = out[pools[p].list];
    view.push_back(PerListEntry{static_cast<std::uint32_t>(view.size() + 1), overall, p});
  }
  return out;
}

}  // namespace seatalloc
