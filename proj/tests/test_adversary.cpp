#include <doctest.h>

#include <set>

#include "sched/adversary.hpp"
#include "sched/engine.hpp"
#include "sched/errors.hpp"
#include "sched/offline_opt.hpp"
#include "sched/policies.hpp"

using namespace sched;

TEST_CASE("opening bundle parameters at delta = 1/2") {
    GameConfig cfg;
    cfg.delta = Rat(1, 2);  // c = 7/4, eps1 = 1/16, w1 = (7/4)*1*8 = 14
    auto out = lower_bound_game(zoo_pair_never_never(), cfg);
    Rat lo(1000000), hi(0);
    std::size_t bundle = 0;
    for (const Job& j : out.instance.jobs) {
        if (j.id.rfind("s1-", 0) != 0) continue;
        ++bundle;
        lo = rat_min(lo, j.w);
        hi = rat_max(hi, j.w);
        CHECK(j.p == Rat(1));
    }
    CHECK(lo == Rat(1));
    CHECK(hi == Rat(14));
    CHECK(bundle == 209);  // steps of 1/16 from 1 to 14
    CHECK(out.ratio_infinite);
    CHECK(out.expected == Rat(0));
    CHECK(out.opt_dp == Rat(14));
}

TEST_CASE("the zero-bundle scale matches the closed form") {
    CHECK(large_j_u(Rat(1, 2), Rat(1, 2)) == Rat(9, 2));
    CHECK(large_j_u(Rat(1, 4), Rat(1, 2)) == Rat(25, 18));
}

TEST_CASE("the game beats the unit-slot pair") {
    for (const Rat& delta : {Rat(1, 2), Rat(1, 4)}) {
        GameConfig cfg;
        cfg.delta = delta;
        auto out = lower_bound_game(ran_pair(), cfg);
        CHECK(out.opt_dp >= out.opt_claimed);
        if (!out.ratio_infinite) CHECK(out.ratio >= Rat(2) - delta);
    }
}

TEST_CASE("the game beats every zoo pair and visits many branches") {
    std::set<std::string> seen;
    for (const auto& pair : zoo_pairs()) {
        GameConfig cfg;
        cfg.delta = Rat(1, 2);
        cfg.prob_a = pair.prob_a;
        auto out = lower_bound_game(pair, cfg);
        INFO(pair.name, " -> ", case_name(out.terminal_case));
        CHECK(out.opt_dp >= out.opt_claimed);
        if (!out.ratio_infinite) CHECK(out.ratio >= Rat(3, 2));
        CHECK(out.steps_used <= 64);
        seen.insert(case_name(out.terminal_case));
    }
    // the scripted pairs are built to reach these branches at delta = 1/2
    for (const char* want : {"min-on-q", "min-on-p", "degenerate", "a-heavy", "large-j", "y-early",
                             "stale-min-pair", "both-on-min", "stayed-on-both", "too-light",
                             "ab-separate", "one-idle", "both-idle"})
        CHECK_MESSAGE(seen.count(want) == 1, "missing branch ", std::string(want));
}

TEST_CASE("probabilities above one half are relabeled") {
    GameConfig cfg;
    cfg.delta = Rat(1, 2);
    cfg.prob_a = Rat(2, 3);
    auto out = lower_bound_game(zoo_pair_greedy_keepfirst(), cfg);
    CHECK(out.relabeled);
    CHECK(out.opt_dp >= out.opt_claimed);
    if (!out.ratio_infinite) CHECK(out.ratio >= Rat(3, 2));
}

TEST_CASE("claimed witness stays feasible and below the optimum") {
    for (const Rat& p : {Rat(1, 2), Rat(1, 3), Rat(1, 4)}) {
        GameConfig cfg;
        cfg.delta = Rat(1, 4);
        cfg.prob_a = p;
        auto out = lower_bound_game(zoo_pair_capped_greedy(), cfg);
        CHECK(out.opt_dp >= out.opt_claimed);
        CHECK(out.opt_claimed.sign() > 0);
        // the witness ids must exist in the released instance
        for (const auto& id : out.claim_ids) CHECK_NOTHROW(out.instance.index_of(id));
    }
}

TEST_CASE("bad parameters are rejected") {
    GameConfig cfg;
    cfg.delta = Rat(2);
    CHECK_THROWS_AS(lower_bound_game(ran_pair(), cfg), SchedError);
    cfg.delta = Rat(1, 2);
    cfg.prob_a = Rat(0);
    CHECK_THROWS_AS(lower_bound_game(ran_pair(), cfg), SchedError);
    cfg.prob_a = Rat(1, 2);
    cfg.v1 = Rat(1, 2);
    CHECK_THROWS_AS(lower_bound_game(ran_pair(), cfg), SchedError);
}

TEST_CASE("the released instance validates as equal-length intervals") {
    GameConfig cfg;
    cfg.delta = Rat(1, 2);
    auto out = lower_bound_game(zoo_pair_almostgreedy_greedy(), cfg);
    CHECK(validate_class(out.instance).ok);
    // arrival times are pairwise distinct
    for (std::size_t i = 0; i + 1 < out.instance.jobs.size(); ++i)
        CHECK(out.instance.jobs[i].r < out.instance.jobs[i + 1].r);
}
