#include <doctest.h>

#include "sched/errors.hpp"
#include "sched/generators.hpp"
#include "sched/offline_opt.hpp"

using namespace sched;

namespace {

Instance intervals(std::vector<std::tuple<const char*, Rat, Rat, Rat>> rows) {
    Instance inst;
    inst.cls = InstanceClass::EqualLengthIntervals;
    for (auto& [id, r, p, w] : rows) inst.jobs.push_back(make_interval(id, r, p, w));
    inst.normalize();
    return inst;
}

}  // namespace

TEST_CASE("interval optimum on hand instances") {
    // pairwise-overlapping bundle: only the heaviest fits
    auto set = build_set(Rat(1), Rat(3), Rat(1), Rat(0), Rat(1, 2), "s");
    Instance bundle;
    bundle.cls = InstanceClass::EqualLengthIntervals;
    bundle.jobs = set;
    bundle.normalize();
    CHECK(opt_intervals(bundle).value == Rat(3));
    CHECK(brute_force_intervals(bundle) == Rat(3));

    Instance disjoint = intervals({{"a", Rat(0), Rat(1), Rat(1)},
                                   {"b", Rat(2), Rat(1), Rat(2)},
                                   {"c", Rat(4), Rat(1), Rat(3)}});
    CHECK(opt_intervals(disjoint).value == Rat(6));

    Instance chain = intervals({{"a", Rat(0), Rat(1), Rat(1)},
                                {"b", Rat(1, 2), Rat(1), Rat(3)},
                                {"c", Rat(1), Rat(1), Rat(1)}});
    CHECK(opt_intervals(chain).value == Rat(3));
    CHECK(brute_force_intervals(chain) == Rat(3));

    CHECK(opt_intervals(Instance{}).value == Rat(0));
    CHECK(brute_force_intervals(Instance{}) == Rat(0));
    CHECK(opt_intervals(single_interval(Rat(9))).value == Rat(9));
}

TEST_CASE("interval optimum witness is feasible and matches the value") {
    GenParams p;
    p.n = 14;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        p.seed = s;
        Instance inst = gen_instance(InstanceClass::EqualLengthIntervals, p);
        OptResult res = opt_intervals(inst);
        auto rep = schedule_feasible(res.witness, inst);
        CHECK(rep.ok);
        CHECK(rep.value == res.value);
    }
}

TEST_CASE("interval optimum equals the exhaustive oracle") {
    GenParams p;
    for (std::uint64_t s = 1; s <= 1000; ++s) {
        p.seed = s;
        p.n = 4 + s % 9;  // up to 12
        p.horizon = Rat(6);
        Instance inst = gen_instance(InstanceClass::EqualLengthIntervals, p);
        CHECK(opt_intervals(inst).value == brute_force_intervals(inst));
    }
}

TEST_CASE("interval optimum is monotone under adding an interval") {
    GenParams p;
    p.n = 10;
    for (std::uint64_t s = 1; s <= 50; ++s) {
        p.seed = s;
        Instance inst = gen_instance(InstanceClass::EqualLengthIntervals, p);
        Rat before = opt_intervals(inst).value;
        inst.jobs.push_back(make_interval("extra", Rat(long(s % 7)), Rat(1), Rat(2)));
        inst.normalize();
        CHECK(opt_intervals(inst).value >= before);
    }
}

TEST_CASE("job optimum on hand instances") {
    Instance three = tight_three_jobs(Rat(1, 100));
    CHECK(opt_equal_jobs(three).value == Rat(301, 100));
    CHECK(brute_force_jobs(three) == Rat(301, 100));

    Instance one;
    one.cls = InstanceClass::EqualLengthJobs;
    one.jobs = {Job{"a", Rat(0), Rat(10), Rat(1), Rat(7)}};
    one.normalize();
    CHECK(opt_equal_jobs(one).value == Rat(7));

    Instance clash;
    clash.cls = InstanceClass::EqualLengthJobs;
    clash.jobs = {Job{"a", Rat(0), Rat(1), Rat(1), Rat(1)}, Job{"b", Rat(0), Rat(1), Rat(1), Rat(1)}};
    clash.normalize();
    CHECK(opt_equal_jobs(clash).value == Rat(1));  // only one fits

    Instance tightfit;
    tightfit.cls = InstanceClass::EqualLengthJobs;
    tightfit.jobs = {Job{"a", Rat(2), Rat(3), Rat(1), Rat(5)}};
    tightfit.normalize();
    CHECK(brute_force_jobs(tightfit) == Rat(5));
}

TEST_CASE("job optimum equals the exhaustive oracle") {
    GenParams p;
    for (std::uint64_t s = 1; s <= 500; ++s) {
        p.seed = s;
        p.n = 3 + s % 5;  // up to 7
        p.horizon = Rat(4);
        p.max_slack = Rat(3);
        Instance inst = gen_instance(InstanceClass::EqualLengthJobs, p);
        CHECK(opt_equal_jobs(inst).value == brute_force_jobs(inst));
    }
}

TEST_CASE("job optimum witness is feasible and matches the value") {
    GenParams p;
    p.n = 9;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        p.seed = s;
        Instance inst = gen_instance(InstanceClass::EqualLengthJobs, p);
        OptResult res = opt_equal_jobs(inst);
        auto rep = schedule_feasible(res.witness, inst);
        CHECK(rep.ok);
        CHECK(rep.value == res.value);
    }
}

TEST_CASE("size caps are enforced") {
    GenParams p;
    p.n = 17;
    Instance big = gen_instance(InstanceClass::EqualLengthIntervals, p);
    CHECK_THROWS_AS(brute_force_intervals(big), SchedError);
    p.n = 13;
    Instance jobs = gen_instance(InstanceClass::EqualLengthJobs, p);
    CHECK_THROWS_AS(opt_equal_jobs(jobs), SchedError);
    CHECK_THROWS_AS(brute_force_jobs(jobs), SchedError);
}
