#pragma once

#include <cstddef>

#include "sched/model.hpp"

namespace sched {

struct OptResult {
    Rat value;
    Trace witness;  // feasible schedule achieving value
};

/// Exact maximum-weight set of pairwise compatible intervals
/// (sort by deadline + predecessor-search dynamic program).
/// Requires every job to be an interval (NotIntervals).
OptResult opt_intervals(const Instance& inst);

/// Exact offline optimum for unit-length jobs with deadlines, over
/// non-preemptive schedules (an optimal offline schedule never aborts:
/// aborted work is wasted). Start times are restricted to the grid
/// {r_j + k : 0 <= k < n}, which is sufficient because any schedule can be
/// left-shifted so every job starts at its release or at another job's
/// completion. Throws TooLarge above the cap.
OptResult opt_equal_jobs(const Instance& inst, std::size_t cap = 12);

/// Exhaustive oracle: max over all 2^n pairwise-compatible subsets.
Rat brute_force_intervals(const Instance& inst, std::size_t cap = 16);

/// Exhaustive oracle: max over all subsets and orderings, each ordered job
/// placed at max(release, previous finish), feasible iff start + 1 <= d.
Rat brute_force_jobs(const Instance& inst, std::size_t cap = 8);

}  // namespace sched
