#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sched/engine.hpp"

namespace sched {

/// Which deterministic half of a pair a policy object implements. The A half
/// accepts in odd slots (s1, s3, ...), the B half in even slots; what "slot"
/// means differs per family.
enum class Half { A, B };

/// Test probe for the provisional-end machinery of the d-benevolent policy.
/// One snapshot is recorded per state change; violations collects any breach
/// of e == d(residual) <= d(main) or of e decreasing monotonically within a
/// slot.
struct RanDProbe {
    struct Snap {
        long phase;
        long slot;  // local to the phase
        Rat e;
        std::optional<Rat> d_residual, d_main;
    };
    std::vector<Snap> snaps;
    std::vector<std::string> violations;
    void clear() {
        snaps.clear();
        violations.clear();
    }
};

// Policy pairs, each mixing its two halves with probability 1/2.
PolicyPair ran_pair();    // equal-length intervals, unit slots
PolicyPair ran_m_pair();  // monotone intervals, deadline-driven slots
PolicyPair ran_c_pair();  // c-benevolent intervals, longest-first
PolicyPair ran_d_pair();  // d-benevolent intervals, provisional slot ends
PolicyPair ran_j_pair();  // equal-length jobs with restarts

/// ran_d_pair with probes attached to both halves (test use).
PolicyPair ran_d_pair_probed(RanDProbe* probe_a, RanDProbe* probe_b);

/// Lookup by CLI name: ran | ran-m | ran-c | ran-d | ran-j.
std::optional<PolicyPair> pair_by_name(const std::string& name);

}  // namespace sched
