#include "seatalloc/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace seatalloc {

VirtualMarket to_virtual_market(const Instance& inst) {
  if (inst.quotas_enabled)
    throw UnfrozenCapacitiesError(
        "supernumerary capacities are run-dependent; pass frozen capacities explicitly");
  std::vector<std::uint32_t> caps(inst.pool_count());
  for (PoolId p = 0; p < inst.pool_count(); ++p) caps[p] = inst.pools[p].capacity;
  return to_virtual_market(inst, caps);
}

VirtualMarket to_virtual_market(const Instance& inst,
                                const std::vector<std::uint32_t>& capacity) {
  const std::size_t n = inst.candidate_count();
  const std::size_t m = inst.pool_count();
  if (capacity.size() != m)
    throw std::invalid_argument("capacity override sized for a different instance");

  VirtualMarket mkt;
  mkt.n_cands = n;
  mkt.capacity = capacity;
  mkt.prefs.resize(n);
  std::vector<std::vector<std::uint8_t>> listed(m, std::vector<std::uint8_t>(n, 0));
  for (CandidateId c = 0; c < n; ++c) {
    auto prefs = inst.prefs(c);
    mkt.prefs[c].assign(prefs.begin(), prefs.end());
    for (PoolId p : prefs) listed[p][c] = 1;
  }
  // Priority = governing merit list restricted to the candidates that rank
  // the pool; eligibility (category membership, female-only) is already baked
  // into the expanded preference lists.
  mkt.priority.assign(m, {});
  for (PoolId p = 0; p < m; ++p) {
    mkt.priority[p].assign(n, kNone);
    const MeritList& list = inst.lists[inst.pools[p].list];
    std::uint32_t pos = 0;
    for (CandidateId c : list.ranking)
      if (listed[p][c]) mkt.priority[p][c] = pos++;
  }
  return mkt;
}

Matching deferred_acceptance(const VirtualMarket& mkt) {
  const std::size_t n = mkt.n_cands;
  Matching out;
  out.pool.assign(n, kNone);
  out.rank.assign(n, kNone);

  std::vector<std::vector<CandidateId>> held(mkt.capacity.size());
  std::vector<std::uint32_t> next(n, 0);
  std::vector<CandidateId> free;
  free.reserve(n);
  for (CandidateId c = 0; c < n; ++c) free.push_back(c);

  while (!free.empty()) {
    CandidateId c = free.back();
    free.pop_back();
    while (next[c] < mkt.prefs[c].size()) {
      PoolId p = mkt.prefs[c][next[c]++];
      if (mkt.priority[p][c] == kNone || mkt.capacity[p] == 0) continue;
      auto& hs = held[p];
      if (hs.size() < mkt.capacity[p]) {
        hs.push_back(c);
        break;
      }
      std::size_t worst = 0;
      for (std::size_t i = 1; i < hs.size(); ++i)
        if (mkt.priority[p][hs[i]] > mkt.priority[p][hs[worst]]) worst = i;
      if (mkt.priority[p][c] < mkt.priority[p][hs[worst]]) {
        free.push_back(hs[worst]);
        hs[worst] = c;
        break;
      }
    }
  }

  for (PoolId p = 0; p < held.size(); ++p) {
    for (CandidateId c : held[p]) {
      out.pool[c] = p;
      out.rank[c] = next[c];  // 1-based: the entry last proposed to
    }
  }
  return out;
}

std::string StabilityViolation::describe() const {
  if (kind == Kind::JustifiedEnvy)
    return "candidate " + std::to_string(cand) + " justifiably envies pool " +
           std::to_string(pool) + " held by lower-priority candidate " +
           std::to_string(incumbent);
  return "pool " + std::to_string(pool) + " wastes a seat wanted by candidate " +
         std::to_string(cand);
}

StabilityReport check_stability(const VirtualMarket& mkt, const Matching& m) {
  return check_stability(mkt, m, {});
}

StabilityReport check_stability(const VirtualMarket& mkt, const Matching& m,
                                const std::vector<std::uint8_t>& ignore) {
  const std::size_t n = mkt.n_cands;
  if (m.pool.size() != n || m.rank.size() != n)
    throw MalformedMatchingError("matching sized for a different market");
  auto ignored = [&](CandidateId c) { return c < ignore.size() && ignore[c]; };

  std::vector<std::vector<CandidateId>> occupants(mkt.capacity.size());
  for (CandidateId c = 0; c < n; ++c) {
    if (ignored(c)) continue;
    PoolId p = m.pool[c];
    if (p == kNone) {
      if (m.rank[c] != kNone) throw MalformedMatchingError("rank without assignment");
      continue;
    }
    if (p >= mkt.capacity.size()) throw MalformedMatchingError("assignment to a bogus pool");
    if (m.rank[c] < 1 || m.rank[c] > mkt.prefs[c].size() || mkt.prefs[c][m.rank[c] - 1] != p)
      throw MalformedMatchingError("assigned rank does not point at the pool");
    if (mkt.priority[p][c] == kNone)
      throw MalformedMatchingError("candidate seated at a pool they are ineligible for");
    occupants[p].push_back(c);
  }
  for (PoolId p = 0; p < occupants.size(); ++p)
    if (occupants[p].size() > mkt.capacity[p]) throw MalformedMatchingError("pool overfull");

  StabilityReport rep;
  for (CandidateId c = 0; c < n; ++c) {
    if (ignored(c)) continue;
    const std::uint32_t limit =
        m.rank[c] == kNone ? static_cast<std::uint32_t>(mkt.prefs[c].size()) : m.rank[c] - 1;
    for (std::uint32_t i = 0; i < limit; ++i) {
      PoolId p = mkt.prefs[c][i];
      if (mkt.priority[p][c] == kNone) continue;
      if (occupants[p].size() < mkt.capacity[p]) {
        rep.waste.push_back(
            StabilityViolation{StabilityViolation::Kind::WastedSeat, c, p, kNone});
        continue;
      }
      CandidateId worst = kNone;
      for (CandidateId o : occupants[p])
        if (worst == kNone || mkt.priority[p][o] > mkt.priority[p][worst]) worst = o;
      if (worst != kNone && mkt.priority[p][worst] > mkt.priority[p][c])
        rep.justified_envy.push_back(
            StabilityViolation{StabilityViolation::Kind::JustifiedEnvy, c, p, worst});
    }
  }
  return rep;
}

std::vector<Matching> enumerate_stable(const VirtualMarket& mkt) {
  const std::size_t n = mkt.n_cands;
  double combos = 1.0;
  for (CandidateId c = 0; c < n; ++c) {
    combos *= static_cast<double>(mkt.prefs[c].size() + 1);
    if (combos > 4e6)
      throw std::invalid_argument("market too large for exhaustive stable enumeration");
  }

  std::vector<Matching> found;
  Matching cur;
  cur.pool.assign(n, kNone);
  cur.rank.assign(n, kNone);
  std::vector<std::uint32_t> used(mkt.capacity.size(), 0);

  auto rec = [&](auto&& self, CandidateId c) -> void {
    if (c == n) {
      if (check_stability(mkt, cur).clean()) found.push_back(cur);
      return;
    }
    cur.pool[c] = kNone;
    cur.rank[c] = kNone;
    self(self, c + 1);
    for (std::uint32_t i = 0; i < mkt.prefs[c].size(); ++i) {
      PoolId p = mkt.prefs[c][i];
      if (mkt.priority[p][c] == kNone || used[p] >= mkt.capacity[p]) continue;
      ++used[p];
      cur.pool[c] = p;
      cur.rank[c] = i + 1;
      self(self, c + 1);
      --used[p];
    }
    cur.pool[c] = kNone;
    cur.rank[c] = kNone;
  };
  rec(rec, 0);
  return found;
}

OracleComparison compare_with_oracle(const Instance& inst,
                                     const std::vector<PoolId>& engine_pool) {
  const std::size_t n = inst.candidate_count();
  if (engine_pool.size() != n)
    throw std::invalid_argument("engine outcome sized for a different instance");

  VirtualMarket mkt = to_virtual_market(inst);
  Matching da = deferred_acceptance(mkt);

  OracleComparison out;
  for (CandidateId c = 0; c < n; ++c)
    if (engine_pool[c] != da.pool[c])
      out.diffs.push_back(MatchDiff{c, engine_pool[c], da.pool[c]});
  out.equal = out.diffs.empty();

  Matching engine;
  engine.pool = engine_pool;
  engine.rank.assign(n, kNone);
  for (CandidateId c = 0; c < n; ++c) {
    if (engine_pool[c] == kNone) continue;
    auto prefs = inst.prefs(c);
    for (std::uint32_t i = 0; i < prefs.size(); ++i) {
      if (prefs[i] == engine_pool[c]) {
        engine.rank[c] = i + 1;
        break;
      }
    }
  }
  out.engine_report = check_stability(mkt, engine);
  return out;
}

}  // namespace seatalloc
