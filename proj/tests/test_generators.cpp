#include <doctest.h>

#include "sched/errors.hpp"
#include "sched/generators.hpp"

using namespace sched;

TEST_CASE("bundle construction steps from v to w") {
    auto s = build_set(Rat(1), Rat(3), Rat(1), Rat(0), Rat(1, 2), "t");
    REQUIRE(s.size() == 3);
    CHECK(s[0].w == Rat(1));
    CHECK(s[1].w == Rat(2));
    CHECK(s[2].w == Rat(3));
    CHECK(s[0].r == Rat(0));
    CHECK(s[1].r == Rat(1, 6));
    CHECK(s[2].r == Rat(1, 3));

    // the effective step is the largest value <= eps dividing w - v
    auto s2 = build_set(Rat(1), Rat(2), Rat(3, 5), Rat(0), Rat(1, 2), "t");
    REQUIRE(s2.size() == 3);
    CHECK(s2[1].w - s2[0].w == Rat(1, 2));

    auto s3 = build_set(Rat(5), Rat(5), Rat(1), Rat(7), Rat(1, 2), "t");
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].w == Rat(5));
    CHECK(s3[0].r == Rat(7));

    CHECK_THROWS_AS(build_set(Rat(3), Rat(1), Rat(1), Rat(0), Rat(1, 2), "t"), SchedError);
    CHECK_THROWS_AS(build_set(Rat(1), Rat(2), Rat(1), Rat(0), Rat(1), "t"), SchedError);
}

TEST_CASE("bundle intervals pairwise overlap and weights rise with arrival") {
    for (long den : {2L, 7L, 16L}) {
        auto s = build_set(Rat(1), Rat(9), Rat(1, den), Rat(5, 3), Rat(1, 2), "t");
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            CHECK(s[i].w < s[i + 1].w);
            CHECK(s[i].r < s[i + 1].r);
        }
        // last arrival strictly before the first deadline: all pairs overlap
        CHECK(s.back().r < s.front().d);
    }
}

TEST_CASE("weight function presets obey their axioms") {
    WeightFn sq = benevolent_fn("power", Rat(2));
    CHECK(sq.eval(Rat(3)) == Rat(9));
    CHECK(sq.eval(Rat(0)) == Rat(0));
    CHECK(sq.eval(Rat(1)) + sq.eval(Rat(3)) <= sq.eval(Rat(0)) + sq.eval(Rat(4)));

    WeightFn rec = benevolent_fn("reciprocal");
    CHECK(rec.eval(Rat(2)) == Rat(1, 2));
    CHECK(rec.eval(Rat(2)) > rec.eval(Rat(4)));

    WeightFn quad = benevolent_fn("quadratic", Rat(2), Rat(3));
    CHECK(quad.eval(Rat(2)) == Rat(14));

    WeightFn dec = benevolent_fn("exp-decay", Rat(8));
    CHECK(dec.eval(Rat(3)) == Rat(1));
    CHECK_THROWS_AS(dec.eval(Rat(1, 2)), SchedError);

    CHECK_THROWS_AS(benevolent_fn("nope"), SchedError);
    CHECK_THROWS_AS(benevolent_fn("power", Rat(1, 2)), SchedError);
}

TEST_CASE("generated instances pass their class validation") {
    GenParams p;
    p.n = 20;
    for (std::uint64_t s = 1; s <= 40; ++s) {
        p.seed = s;
        for (auto cls : {InstanceClass::EqualLengthIntervals, InstanceClass::Monotone,
                         InstanceClass::EqualLengthJobs}) {
            CHECK(validate_class(gen_instance(cls, p)).ok);
        }
        GenParams pc = p;
        pc.fn = benevolent_fn("power", Rat(2));
        CHECK(validate_class(gen_instance(InstanceClass::CBenevolent, pc)).ok);
        GenParams pd = p;
        pd.fn = benevolent_fn("reciprocal");
        CHECK(validate_class(gen_instance(InstanceClass::DBenevolent, pd)).ok);
        GenParams pe = p;
        pe.fn = benevolent_fn("exp-decay", Rat(16));
        CHECK(validate_class(gen_instance(InstanceClass::DBenevolent, pe)).ok);
    }
    GenParams empty;
    empty.n = 0;
    CHECK(gen_instance(InstanceClass::Monotone, empty).jobs.empty());
}

TEST_CASE("the named example instances validate") {
    CHECK(validate_class(tight_three_jobs(Rat(1, 100))).ok);
    CHECK(validate_class(tight_three_jobs(Rat(0))).ok);
    CHECK(validate_class(single_interval(Rat(2))).ok);
    Instance three = tight_three_jobs(Rat(1, 100));
    CHECK(three.jobs.size() == 3);
    CHECK(three.index_of("X") < three.jobs.size());
}
