#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sched/engine.hpp"

namespace sched {

/// Knobs of the lower-bound game. The game guarantees, for any pair of
/// event-driven deterministic policies mixed with probabilities prob_a and
/// 1 - prob_a, an offline/expected ratio of at least 2 - delta.
struct GameConfig {
    Rat delta = Rat(1, 2);    // in (0, 1)
    Rat prob_a = Rat(1, 2);   // in (0, 1); relabeled internally so the tracked side has prob <= 1/2
    Rat v1 = 1;               // smallest weight of the opening set, >= 1
    int step_cap = 64;        // bound on nested set releases; exceeding it signals a bug
    std::size_t release_cap = 10'000'000;  // bound on total released intervals
};

/// Classification of the pair's observable state right after a release.
/// The first block are the step-level cases; the rest are refinements that
/// make the dispatch total over every reachable observation.
enum class CaseTag {
    StepOn,         // both halves moved into the fresh set; recursion continues
    StayedOnBoth,   // both ignored the fresh set
    YEarly,         // lighter interval started later than the heavier one
    AHeavy,         // the low-probability half holds the heavier interval
    ABSeparate,     // halves split across two non-overlapping sets
    LargeJ,         // heavier at least twice the lighter
    TooLight,       // step 1 only: even the heavier choice is too light
    MinOnP,         // low-probability half parked on the set minimum
    MinOnQ,         // high-probability half parked on the set minimum
    BothOnMin,      // both on the set minimum
    StaleMinPair,   // one stale, one on the fresh minimum
    OneIdle,        // one half idle (or on a dead run)
    BothIdle,       // neither half engaged at all
    Degenerate,     // recursion bottomed out in a single-interval set
};

const char* case_name(CaseTag t);

struct GameOutcome {
    Instance instance;          // everything released
    Rat opt_claimed;            // value of the adversary's explicit witness
    Rat opt_dp;                 // exact offline optimum on the instance
    Rat val_a, val_b, expected;
    bool ratio_infinite = false;
    Rat ratio;                  // opt_dp / expected, when expected > 0
    int steps_used = 0;         // sets released along the main recursion
    std::size_t released_count = 0;
    bool relabeled = false;     // halves swapped so the tracked side has prob <= 1/2
    CaseTag terminal_case = CaseTag::BothIdle;
    std::vector<std::string> claim_ids;  // the witness jobs backing opt_claimed
};

/// Plays the adaptive game against the pair and returns the outcome with the
/// exact offline optimum of the released instance. Throws StepCapExceeded if
/// the step or release caps are hit (which would contradict the termination
/// argument for the main recursion). A pair that never runs anything yields
/// expected = 0 and an infinite ratio.
GameOutcome lower_bound_game(const PolicyPair& pair, const GameConfig& cfg);

/// The per-probability weight scale of the zero-based bundle used when the
/// heavier held interval is at least twice the lighter one.
Rat large_j_u(const Rat& p, const Rat& delta);

/// Adversarial test policies: simple deterministic interval policies plus
/// scripted "burst hoppers" (per-release weight caps) that steer the game
/// into every dispatcher branch.
PolicyPair zoo_pair_greedy_keepfirst();        // prob 1/2
PolicyPair zoo_pair_almostgreedy_greedy();     // prob 1/2, recursion + bottom-out
PolicyPair zoo_pair_keepfirst_greedy_q();      // prob 1/4, minimum parking
PolicyPair zoo_pair_greedy_almostgreedy();     // prob 1/3, heavy side on low prob
PolicyPair zoo_pair_capped_greedy();           // prob 1/2, big weight gap
PolicyPair zoo_pair_greedy_never();            // prob 1/2, one idle half
PolicyPair zoo_pair_never_never();             // prob 1/2, fully idle
std::vector<PolicyPair> zoo_pairs();

/// Pair lookup for the CLI: "ran" or any zoo pair name.
std::optional<PolicyPair> adversary_pair_by_name(const std::string& name);

}  // namespace sched
