// Acceptance suite: every guarantee the library makes, checked exactly
// (rational comparisons, zero tolerance) over large randomized sweeps plus
// the closed-form instances. Prints one line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "sched/adversary.hpp"
#include "sched/charging.hpp"
#include "sched/engine.hpp"
#include "sched/generators.hpp"
#include "sched/offline_opt.hpp"
#include "sched/policies.hpp"

using namespace sched;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& note = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << idx << ": " << what;
    if (!note.empty()) std::cout << " (" << note << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GenParams sweep_params(std::size_t n, std::uint64_t seed) {
    GenParams p;
    p.n = n;
    p.seed = seed;
    p.horizon = Rat(long(std::max<std::size_t>(2, n / 2)));
    return p;
}

// criterion 1: unit-slot pair, offline <= val(A) + val(B), 10000 instances
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    auto pair = ran_pair();
    bool ok = true;
    for (std::uint64_t s = 1; s <= 10000 && ok; ++s) {
        GenParams p = sweep_params(10 + s % 41, s);  // up to 50 jobs
        Instance inst = gen_instance(InstanceClass::EqualLengthIntervals, p);
        MixtureResult mix = run_mixture(inst, pair);
        ok = opt_intervals(inst).value <= mix.val_a + mix.val_b;
    }
    std::ostringstream note;
    note << "10000 instances, " << seconds_since(t0) << "s";
    report(1, "unit-slot pair is 2-competitive on equal-length intervals", ok, note.str());
}

// criterion 2: same exact bound for the monotone, c- and d-benevolent pairs
void criterion_2() {
    struct Case {
        const char* label;
        InstanceClass cls;
        PolicyPair pair;
        WeightFn fn;
    };
    std::vector<Case> cases = {
        {"monotone", InstanceClass::Monotone, ran_m_pair(), WeightFn{}},
        {"c-benevolent/linear", InstanceClass::CBenevolent, ran_c_pair(), benevolent_fn("linear")},
        {"c-benevolent/power2", InstanceClass::CBenevolent, ran_c_pair(), benevolent_fn("power", Rat(2))},
        {"d-benevolent/reciprocal", InstanceClass::DBenevolent, ran_d_pair(), benevolent_fn("reciprocal")},
    };
    bool ok = true;
    std::string bad;
    for (auto& c : cases) {
        for (std::uint64_t s = 1; s <= 5000; ++s) {
            GenParams p = sweep_params(8 + s % 13, s);
            p.fn = c.fn;
            Instance inst = gen_instance(c.cls, p);
            MixtureResult mix = run_mixture(inst, c.pair);
            if (!(opt_intervals(inst).value <= mix.val_a + mix.val_b)) {
                ok = false;
                bad = std::string(c.label) + " seed " + std::to_string(s);
                break;
            }
        }
    }
    report(2, "deadline-driven pairs are 2-competitive on their classes", ok,
           ok ? "4 x 5000 instances" : bad);
}

// criterion 3: restart pair, offline <= 1.5 (val(A) + val(B)), 5000 instances
void criterion_3() {
    auto pair = ran_j_pair();
    bool ok = true;
    for (std::uint64_t s = 1; s <= 5000 && ok; ++s) {
        GenParams p = sweep_params(5 + s % 6, s);  // up to 10 jobs
        p.horizon = Rat(long(2 + s % 5));
        p.max_slack = Rat(long(1 + s % 4));
        Instance inst = gen_instance(InstanceClass::EqualLengthJobs, p);
        MixtureResult mix = run_mixture(inst, pair);
        ok = Rat(2) * opt_equal_jobs(inst).value <= Rat(3) * (mix.val_a + mix.val_b);
    }
    report(3, "restart pair is 3-competitive on equal-length jobs", ok, "5000 instances");
}

// criterion 4: the three-job margin gives 301/101 exactly and tightens to 3
void criterion_4() {
    Instance three = tight_three_jobs(Rat(1, 100));
    MixtureResult mix = run_mixture(three, ran_j_pair());
    Rat ratio = opt_equal_jobs(three).value / mix.expected;
    bool ok = ratio == Rat(301, 101);
    Rat prev = 0;
    for (const Rat& eps : {Rat(1, 10), Rat(1, 100), Rat(1, 1000)}) {
        Instance inst = tight_three_jobs(eps);
        MixtureResult m = run_mixture(inst, ran_j_pair());
        Rat r = opt_equal_jobs(inst).value / m.expected;
        ok = ok && r > prev && r < Rat(3);
        prev = r;
    }
    report(4, "three-job margin: ratio 301/101 at 1/100, increasing toward 3", ok);
}

// criterion 5: a single interval costs the unit-slot pair exactly half
void criterion_5() {
    Instance one = single_interval(Rat(1));
    MixtureResult mix = run_mixture(one, ran_pair());
    bool ok = opt_intervals(one).value / mix.expected == Rat(2);
    report(5, "single interval: ratio exactly 2", ok);
}

// criterion 6: the adaptive game reaches 2 - delta against the bundled pairs
void criterion_6() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string bad;
    std::set<std::string> branches;
    std::vector<PolicyPair> pairs = zoo_pairs();
    pairs.insert(pairs.begin(), ran_pair());
    for (const Rat& delta : {Rat(1, 2), Rat(1, 4), Rat(1, 10)}) {
        for (const auto& pair : pairs) {
            GameConfig cfg;
            cfg.delta = delta;
            cfg.prob_a = pair.prob_a;
            GameOutcome out;
            try {
                out = lower_bound_game(pair, cfg);
            } catch (const std::exception& e) {
                ok = false;
                bad = pair.name + " delta " + delta.str() + ": " + e.what();
                continue;
            }
            branches.insert(case_name(out.terminal_case));
            bool this_ok = out.opt_dp >= out.opt_claimed && out.steps_used <= cfg.step_cap &&
                           (out.ratio_infinite || out.ratio >= Rat(2) - delta);
            if (!this_ok) {
                ok = false;
                bad = pair.name + " delta " + delta.str() + " ratio " +
                      (out.ratio_infinite ? "inf" : out.ratio.str()) + " case " +
                      case_name(out.terminal_case);
            }
        }
    }
    std::ostringstream note;
    note << pairs.size() << " pairs x 3 deltas, " << branches.size() << " branches, "
         << seconds_since(t0) << "s";
    report(6, "adaptive game forces ratio >= 2 - delta", ok, ok ? note.str() : bad);
}

// criterion 7: the optimizers agree with the exhaustive oracles
void criterion_7() {
    bool ok = true;
    for (std::uint64_t s = 1; s <= 1000 && ok; ++s) {
        GenParams p = sweep_params(4 + s % 9, s);  // up to 12
        p.horizon = Rat(6);
        Instance inst = gen_instance(InstanceClass::EqualLengthIntervals, p);
        ok = opt_intervals(inst).value == brute_force_intervals(inst);
    }
    bool ok2 = true;
    for (std::uint64_t s = 1; s <= 500 && ok2; ++s) {
        GenParams p = sweep_params(3 + s % 5, s);  // up to 7
        p.horizon = Rat(4);
        p.max_slack = Rat(3);
        Instance inst = gen_instance(InstanceClass::EqualLengthJobs, p);
        ok2 = opt_equal_jobs(inst).value == brute_force_jobs(inst);
    }
    report(7, "offline optima equal the exhaustive oracles", ok && ok2, "1000 + 500 instances");
}

// criterion 8: the charging ledger balances and pairs up exactly
void criterion_8() {
    auto pair = ran_j_pair();
    bool ok = true;
    std::size_t bad_slots = 0;
    std::string note;
    // deliberate late-completion instances guarantee bad slots of both
    // parities; the sweep stresses everything else
    std::vector<Instance> extra;
    for (long shift = 0; shift < 4; ++shift) {
        Instance inst;
        inst.cls = InstanceClass::EqualLengthJobs;
        inst.jobs = {
            Job{"h1", Rat(0), Rat(1), Rat(1), Rat(5)},
            Job{"x", Rat(3, 2), Rat(8), Rat(1), Rat(3)},
            Job{"h2", Rat(2), Rat(3), Rat(1), Rat(4)},
            Job{"c4", Rat(5, 2), Rat(4), Rat(1), Rat(1, 2)},
            Job{"y", Rat(7, 2), Rat(13, 2), Rat(1), Rat(2)},
            Job{"g", Rat(4), Rat(5), Rat(1), Rat(1)},
        };
        for (Job& j : inst.jobs) {
            j.r += Rat(shift);
            j.d += Rat(shift);
        }
        inst.normalize();
        extra.push_back(std::move(inst));
    }
    for (std::uint64_t s = 1; s <= 2000 && ok; ++s) {
        Instance inst;
        if (s <= extra.size()) {
            inst = extra[s - 1];
        } else {
            GenParams p = sweep_params(12, s);
            p.horizon = Rat(4);
            p.max_slack = Rat(8);
            p.w_max = Rat(3);
            p.grid_den = 2;
            inst = gen_instance(InstanceClass::EqualLengthJobs, p);
        }
        MixtureResult mix = run_mixture(inst, pair);
        OptResult opt = opt_equal_jobs(inst, 12);
        ChargeLedger led = compute_charges(opt.witness, mix.trace_a, mix.trace_b, inst);
        if (!led.violations.empty() || led.total_charged() != opt.value) {
            ok = false;
            note = "ledger broken at seed " + std::to_string(s);
            break;
        }
        auto cls = classify_slots(led);
        bad_slots += cls.bad.size();
        std::map<long, long> pairing;
        try {
            pairing = pair_bad_slots(led, cls);
        } catch (const std::exception& e) {
            ok = false;
            note = "seed " + std::to_string(s) + ": " + e.what();
            break;
        }
        auto rep = verify_ratio(led, cls, pairing);
        if (!rep.ok) {
            ok = false;
            note = "seed " + std::to_string(s) + ": " + rep.violations.front();
        }
    }
    if (ok && bad_slots == 0) {
        ok = false;
        note = "sweep never produced a bad slot";
    }
    if (ok) note = "2000 instances, " + std::to_string(bad_slots) + " bad slots paired";
    report(8, "charging conserves weight and pairs bad slots within 1.5x", ok, note);
}

// criterion 9: the provisional slot end stays consistent and only shrinks
void criterion_9() {
    RanDProbe pa, pb;
    auto pair = ran_d_pair_probed(&pa, &pb);
    WeightFn rec = benevolent_fn("reciprocal");
    bool ok = true;
    std::size_t events = 0;
    for (std::uint64_t s = 1; s <= 5000 && ok; ++s) {
        pa.clear();
        pb.clear();
        GenParams p = sweep_params(6 + s % 10, s);
        p.fn = rec;
        Instance inst = gen_instance(InstanceClass::DBenevolent, p);
        run_mixture(inst, pair);
        events += pa.snaps.size() + pb.snaps.size();
        ok = pa.violations.empty() && pb.violations.empty();
    }
    report(9, "provisional slot ends equal the residual deadline and never grow", ok,
           std::to_string(events) + " probed events over 5000 instances");
}

// criterion 10: merging lengths never loses weight for the convex presets
void criterion_10() {
    bool ok = true;
    for (const auto& preset : {benevolent_fn("linear"), benevolent_fn("power", Rat(2)),
                               benevolent_fn("quadratic", Rat(2), Rat(1))}) {
        SplitMix64 rng(99);
        for (int it = 0; it < 10000 && ok; ++it) {
            std::size_t k = 1 + rng.below(5);
            Rat sum = 0, fsum = 0;
            for (std::size_t i = 0; i < k; ++i) {
                Rat len(1 + long(rng.below(24)), 1 + long(rng.below(4)));
                sum += len;
                fsum += preset.eval(len);
            }
            Rat big = sum + Rat(long(rng.below(9)), 4);
            ok = preset.eval(big) >= fsum;
        }
    }
    report(10, "convex presets: f(total) dominates the sum of the parts", ok,
           "3 presets x 10000 tuples");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
