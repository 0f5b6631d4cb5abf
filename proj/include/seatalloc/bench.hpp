#pragma once

#include <cstdint>
#include <vector>

namespace seatalloc {

struct BenchPoint {
  std::uint32_t candidates = 0;
  std::uint64_t work = 0;          // m + sum_p + sum_q for the instance
  std::uint64_t op_counter = 0;    // elementary steps the joint run charged
  std::uint64_t delinked_ops = 0;  // sum of per-list baseline step counts
  double ratio = 0.0;              // op_counter / work
  double seconds = 0.0;            // joint allocation wall time, excludes generation
};

// Generates and allots one instance per requested size (mean preference
// length `mean_prefs`, two merit lists) and reports the work ratio, the
// delinked-baseline counter, and wall time for each.
std::vector<BenchPoint> run_bench(const std::vector<std::uint32_t>& sizes,
                                  double mean_prefs, std::uint64_t seed);

}  // namespace seatalloc
