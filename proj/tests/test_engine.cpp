#include <doctest.h>

#include "sched/adversary.hpp"
#include "sched/engine.hpp"
#include "sched/errors.hpp"
#include "sched/generators.hpp"
#include "sched/policies.hpp"

using namespace sched;

TEST_CASE("single interval: the A half completes it, the B half never starts") {
    Instance inst = single_interval(Rat(4));
    auto pair = ran_pair();
    Trace a = run_online(inst, pair.make_a);
    Trace b = run_online(inst, pair.make_b);
    CHECK(a.value == Rat(4));
    CHECK(b.value == Rat(0));
    MixtureResult mix = run_mixture(inst, pair);
    CHECK(mix.expected == Rat(2));
}

TEST_CASE("mixture on the three-job example is exact") {
    Instance inst = tight_three_jobs(Rat(1, 100));
    MixtureResult mix = run_mixture(inst, ran_j_pair());
    CHECK(mix.val_a == Rat(101, 100));
    CHECK(mix.val_b == Rat(101, 100));
    CHECK(mix.expected == Rat(101, 100));

    CHECK(run_mixture(Instance{}, ran_pair()).expected == Rat(0));
}

TEST_CASE("run_online rejects a policy/class mismatch") {
    Instance inst = tight_three_jobs(Rat(1, 100));
    CHECK_THROWS_AS(run_mixture(inst, ran_c_pair()), SchedError);
}

TEST_CASE("simulation is deterministic") {
    GenParams p;
    p.n = 30;
    p.seed = 11;
    Instance inst = gen_instance(InstanceClass::EqualLengthJobs, p);
    Trace t1 = run_online(inst, ran_j_pair().make_a);
    Trace t2 = run_online(inst, ran_j_pair().make_a);
    REQUIRE(t1.events.size() == t2.events.size());
    for (std::size_t i = 0; i < t1.events.size(); ++i) {
        CHECK(t1.events[i].t == t2.events[i].t);
        CHECK(t1.events[i].kind == t2.events[i].kind);
        CHECK(t1.events[i].job == t2.events[i].job);
    }
}

TEST_CASE("drained traces close every start with an abort or completion") {
    GenParams p;
    p.n = 20;
    for (std::uint64_t s = 1; s <= 50; ++s) {
        p.seed = s;
        Instance inst = gen_instance(InstanceClass::EqualLengthJobs, p);
        for (const auto& mk : {ran_j_pair().make_a, ran_j_pair().make_b}) {
            Trace t = run_online(inst, mk);
            std::vector<int> starts(inst.jobs.size()), closes(inst.jobs.size()), completes(inst.jobs.size());
            for (const auto& e : t.events) {
                if (e.kind == EventKind::Start) ++starts[e.job];
                else ++closes[e.job];
                if (e.kind == EventKind::Complete) ++completes[e.job];
            }
            for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
                CHECK(starts[j] == closes[j]);
                CHECK(completes[j] <= 1);
            }
        }
    }
}

TEST_CASE("policy traces are feasible and accept at most one job per slot") {
    GenParams p;
    p.n = 25;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        p.seed = s;
        Instance inst = gen_instance(InstanceClass::EqualLengthJobs, p);
        for (const auto& mk : {ran_j_pair().make_a, ran_j_pair().make_b}) {
            Trace t = run_online(inst, mk);
            CHECK(schedule_feasible(t, inst).ok);
            // accepted_per_slot throws if a slot accepted two jobs
            CHECK_NOTHROW(accepted_per_slot(t, unit_slots(64)));
        }
    }
}

namespace {

// releases one interval at time 0 and stops
class OneShotAdversary final : public AdversarySource {
public:
    std::optional<Release> next(const Observation&, const Rat&, const std::vector<Job>&) override {
        if (done_) return std::nullopt;
        done_ = true;
        return Release{{make_interval("only", Rat(0), Rat(1), Rat(1))}};
    }

private:
    bool done_ = false;
};

class SilentAdversary final : public AdversarySource {
public:
    std::optional<Release> next(const Observation&, const Rat&, const std::vector<Job>&) override {
        return std::nullopt;
    }
};

class PastAdversary final : public AdversarySource {
public:
    std::optional<Release> next(const Observation&, const Rat& clock, const std::vector<Job>& rel) override {
        if (rel.size() > 1) return std::nullopt;
        Release r;
        r.jobs.push_back(make_interval("a" + std::to_string(rel.size()), clock + 1, Rat(1), Rat(1)));
        if (!rel.empty()) r.jobs.back().r = Rat(0);  // second release lands in the past
        return r;
    }
};

}  // namespace

TEST_CASE("adaptive loop basics") {
    SilentAdversary silent;
    auto res = run_adaptive(silent, ran_pair());
    CHECK(res.instance.jobs.empty());
    CHECK(res.expected == Rat(0));

    OneShotAdversary one;
    auto res1 = run_adaptive(one, ran_pair());
    CHECK(res1.released_count == 1);
    CHECK(res1.expected == Rat(1, 2));

    PastAdversary past;
    CHECK_THROWS_AS(run_adaptive(past, ran_pair()), SchedError);
}

TEST_CASE("adaptive runs replay obliviously") {
    GameConfig cfg;
    cfg.delta = Rat(1, 2);
    auto pair = zoo_pair_greedy_keepfirst();
    // play the lower-bound game, then replay the released instance through
    // the plain oblivious engine
    auto out = lower_bound_game(pair, cfg);
    Trace ta = run_online(out.instance, pair.make_a);
    Trace tb = run_online(out.instance, pair.make_b);
    CHECK(ta.value == out.val_a);
    CHECK(tb.value == out.val_b);
}
