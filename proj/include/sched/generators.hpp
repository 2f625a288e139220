#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sched/model.hpp"

namespace sched {

/// Deterministic 64-bit generator (splitmix64); identical seeds give
/// identical instances on every platform.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    /// uniform in [0, n)
    std::uint64_t below(std::uint64_t n);
};

struct GenParams {
    std::size_t n = 10;
    std::uint64_t seed = 1;
    Rat horizon = 20;         // arrivals fall in [0, horizon]
    Rat w_min = 1, w_max = 10;
    long grid_den = 4;        // arrival/weight grid denominator
    Rat max_slack = 4;        // jobs: d = r + 1 + slack, slack in [0, max_slack]
    Rat max_len = 4;          // benevolent classes: lengths in (0, max_len]
    WeightFn fn;              // weight function for the benevolent classes
};

/// Reproducible random instance of the requested class; the output always
/// passes validate_class. Throws BadParams on nonsense knobs.
Instance gen_instance(InstanceClass cls, const GenParams& params);

/// Bundle of pairwise-overlapping unit intervals whose weights step from v
/// to w: step = largest value <= eps dividing w - v, lighter intervals
/// arriving earlier, all m arrivals evenly spaced by window/m starting at t0.
/// Requires 0 <= v <= w, eps > 0 and 0 < window < 1, so the last interval
/// arrives before the first one ends. Ids are prefix + running number.
std::vector<Job> build_set(const Rat& v, const Rat& w, const Rat& eps, const Rat& t0,
                           const Rat& window, const std::string& id_prefix);

/// Weight-function presets by name:
///   c-benevolent: linear | power (exponent a) | quadratic (a p^2 + b p)
///   d-benevolent: reciprocal | exp-decay (a 2^-p, integer lengths)
/// Throws BadPreset for unknown names or parameters outside the class axioms.
WeightFn benevolent_fn(const std::string& preset, const Rat& a = 1, const Rat& b = 0);

/// Three unit jobs where both halves of the restart policy complete only the
/// heavy one while an offline schedule completes all three; the ratio tends
/// to 3 as eps shrinks.
Instance tight_three_jobs(const Rat& eps);

/// One unit interval of weight w arriving at time 0.
Instance single_interval(const Rat& w);

}  // namespace sched
