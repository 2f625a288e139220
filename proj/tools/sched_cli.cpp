// Command-line front door: simulate policies on instance files, sweep random
// instances, run the lower-bound adversary game, generate instances, compute
// exact offline optima, and run the self-check suites.
//
// Exit codes: 0 ok, 1 check failed, 2 parse/usage error, 3 class mismatch,
// 4 adversary step cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sched/adversary.hpp"
#include "sched/charging.hpp"
#include "sched/engine.hpp"
#include "sched/errors.hpp"
#include "sched/generators.hpp"
#include "sched/io.hpp"
#include "sched/offline_opt.hpp"
#include "sched/policies.hpp"

using namespace sched;
using nlohmann::json;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

std::string ratio_str(const Rat& opt, const Rat& expected) {
    if (expected.is_zero()) return "inf";
    return (opt / expected).str();
}

double ratio_dec(const Rat& opt, const Rat& expected) {
    if (expected.is_zero()) return std::numeric_limits<double>::infinity();
    return (opt / expected).approx();
}

Rat oracle_value(const Instance& inst, std::size_t jobs_cap) {
    if (inst.cls == InstanceClass::EqualLengthJobs) return opt_equal_jobs(inst, jobs_cap).value;
    return opt_intervals(inst).value;
}

GenParams params_for(InstanceClass, std::size_t n, std::uint64_t seed, const WeightFn& fn) {
    GenParams p;
    p.n = n;
    p.seed = seed;
    p.fn = fn;
    p.horizon = Rat(long(n));  // keeps instances reasonably crowded
    return p;
}

WeightFn default_fn(InstanceClass cls) {
    if (cls == InstanceClass::DBenevolent) return benevolent_fn("reciprocal");
    return benevolent_fn("power", Rat(2));
}

int cmd_simulate(const std::string& path, const std::string& policy, std::size_t jobs_cap, bool csv,
                 const std::string& trace_a, const std::string& trace_b) {
    auto pair = pair_by_name(policy);
    if (!pair) {
        std::cerr << "unknown policy '" << policy << "'\n";
        return 2;
    }
    Instance inst;
    try {
        inst = read_instance_file(path);
    } catch (const SchedError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    auto rep = validate_class(inst);
    if (!rep.ok) {
        for (const auto& v : rep.violations) std::cerr << "class violation: " << v << "\n";
        return 3;
    }
    double t0 = now_ms();
    MixtureResult mix;
    try {
        mix = run_mixture(inst, *pair);
    } catch (const SchedError& e) {
        std::cerr << e.what() << "\n";
        return e.code == Err::ClassMismatch ? 3 : 2;
    }
    Rat opt = oracle_value(inst, jobs_cap);
    auto dump_trace = [&](const std::string& to, const Trace& t) {
        if (to.empty()) return;
        std::ofstream out(to);
        write_trace(out, t, inst);
    };
    dump_trace(trace_a, mix.trace_a);
    dump_trace(trace_b, mix.trace_b);
    if (csv) {
        std::cout << "policy,class,n,val_a,val_b,expected,opt,ratio,ratio_dec\n"
                  << pair->name << "," << class_name(inst.cls) << "," << inst.jobs.size() << ","
                  << mix.val_a << "," << mix.val_b << "," << mix.expected << "," << opt << ","
                  << ratio_str(opt, mix.expected) << "," << ratio_dec(opt, mix.expected) << "\n";
        return 0;
    }
    json out;
    out["policy"] = pair->name;
    out["class"] = class_name(inst.cls);
    out["n"] = inst.jobs.size();
    out["val_a"] = mix.val_a.str();
    out["val_b"] = mix.val_b.str();
    out["expected"] = mix.expected.str();
    out["opt"] = opt.str();
    out["ratio"] = ratio_str(opt, mix.expected);
    out["ratio_dec"] = ratio_dec(opt, mix.expected);
    out["wall_ms"] = now_ms() - t0;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_opt(const std::string& path, bool brute, std::size_t jobs_cap) {
    Instance inst;
    try {
        inst = read_instance_file(path);
    } catch (const SchedError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    json out;
    if (inst.cls == InstanceClass::EqualLengthJobs) {
        auto res = opt_equal_jobs(inst, jobs_cap);
        out["value"] = res.value.str();
        if (brute) out["brute"] = brute_force_jobs(inst, 8).str();
        std::ostringstream w;
        write_trace(w, res.witness, inst);
        out["witness"] = w.str();
    } else {
        auto res = opt_intervals(inst);
        out["value"] = res.value.str();
        if (brute) out["brute"] = brute_force_intervals(inst).str();
        std::ostringstream w;
        write_trace(w, res.witness, inst);
        out["witness"] = w.str();
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_gen(const std::string& cls_name, std::size_t n, std::uint64_t seed,
            const std::string& preset, const std::string& a, const std::string& b,
            const std::string& builtin, const std::string& eps, const std::string& out_path) {
    Instance inst;
    if (!builtin.empty()) {
        if (builtin == "three-jobs")
            inst = tight_three_jobs(Rat::parse(eps.empty() ? "1/100" : eps));
        else if (builtin == "single")
            inst = single_interval(Rat(1));
        else {
            std::cerr << "unknown builtin '" << builtin << "'\n";
            return 2;
        }
    } else {
        auto cls = class_from_name(cls_name);
        if (!cls) {
            std::cerr << "unknown class '" << cls_name << "'\n";
            return 2;
        }
        WeightFn fn = preset.empty() ? default_fn(*cls)
                                     : benevolent_fn(preset, a.empty() ? Rat(1) : Rat::parse(a),
                                                     b.empty() ? Rat(0) : Rat::parse(b));
        inst = gen_instance(*cls, params_for(*cls, n, seed, fn));
    }
    if (out_path.empty() || out_path == "-")
        write_instance(std::cout, inst);
    else
        write_instance_file(out_path, inst);
    return 0;
}

int cmd_adversary(const std::string& policy, const std::string& delta, const std::string& p,
                  const std::string& v1, const std::string& out_path) {
    auto pair = adversary_pair_by_name(policy);
    if (!pair) {
        std::cerr << "unknown policy pair '" << policy << "'\n";
        return 2;
    }
    GameConfig cfg;
    try {
        cfg.delta = Rat::parse(delta);
        cfg.prob_a = Rat::parse(p);
        if (!v1.empty()) cfg.v1 = Rat::parse(v1);
        GameOutcome out = lower_bound_game(*pair, cfg);
        json j;
        j["pair"] = pair->name;
        j["delta"] = cfg.delta.str();
        j["p"] = cfg.prob_a.str();
        j["expected"] = out.expected.str();
        j["opt_dp"] = out.opt_dp.str();
        j["opt_claimed"] = out.opt_claimed.str();
        j["ratio"] = out.ratio_infinite ? "inf" : out.ratio.str();
        j["ratio_dec"] = out.ratio_infinite ? std::numeric_limits<double>::infinity() : out.ratio.approx();
        j["steps_used"] = out.steps_used;
        j["released_count"] = out.released_count;
        j["terminal_case"] = case_name(out.terminal_case);
        j["relabeled"] = out.relabeled;
        std::cout << j.dump(2) << "\n";
        if (!out_path.empty()) write_instance_file(out_path, out.instance);
        Rat bound = Rat(2) - cfg.delta;
        if (!out.ratio_infinite && out.ratio < bound) {
            std::cerr << "ratio below 2 - delta\n";
            return 1;
        }
        return 0;
    } catch (const SchedError& e) {
        std::cerr << e.what() << "\n";
        return e.code == Err::StepCapExceeded ? 4 : 2;
    }
}

int cmd_sweep(const std::string& cls_name, const std::string& policy, std::size_t n,
              std::size_t count, std::uint64_t seed, unsigned threads, std::size_t jobs_cap) {
    auto cls = class_from_name(cls_name);
    auto pair = pair_by_name(policy);
    if (!cls || !pair || n == 0 || count == 0) {
        std::cerr << "bad sweep parameters\n";
        return 2;
    }
    if (pair->required_class && *pair->required_class != *cls) {
        std::cerr << "policy/class mismatch\n";
        return 3;
    }
    struct Row {
        std::uint64_t seed;
        Rat val_a, val_b, expected, opt;
    };
    std::vector<Row> rows(count);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> cursor{0};
    WeightFn fn = default_fn(*cls);
    unsigned nthreads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= count) return;
                std::uint64_t s = seed + i;
                Instance inst = gen_instance(*cls, params_for(*cls, n, s, fn));
                MixtureResult mix = run_mixture(inst, *pair);
                rows[i] = Row{s, mix.val_a, mix.val_b, mix.expected, oracle_value(inst, jobs_cap)};
            }
        });
    }
    for (auto& th : pool) th.join();

    std::cout << "seed,val_a,val_b,expected,opt,ratio,ratio_dec\n";
    Rat max_ratio = 0;
    bool any_inf = false;
    for (const Row& r : rows) {
        std::cout << r.seed << "," << r.val_a << "," << r.val_b << "," << r.expected << "," << r.opt
                  << "," << ratio_str(r.opt, r.expected) << "," << ratio_dec(r.opt, r.expected) << "\n";
        if (r.expected.is_zero()) {
            if (!r.opt.is_zero()) any_inf = true;
        } else {
            max_ratio = rat_max(max_ratio, r.opt / r.expected);
        }
    }
    std::cout << "max_ratio," << (any_inf ? "inf" : max_ratio.str()) << ",,,,,"
              << (any_inf ? std::numeric_limits<double>::infinity() : max_ratio.approx()) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// self-check suites

bool suite_oracles(std::ostream& os) {
    bool ok = true;
    for (std::uint64_t s = 1; s <= 200; ++s) {
        GenParams p = params_for(InstanceClass::EqualLengthIntervals, 8 + s % 5, s, WeightFn{});
        Instance inst = gen_instance(InstanceClass::EqualLengthIntervals, p);
        if (opt_intervals(inst).value != brute_force_intervals(inst)) {
            os << "interval oracle mismatch at seed " << s << "\n";
            ok = false;
        }
    }
    for (std::uint64_t s = 1; s <= 100; ++s) {
        GenParams p = params_for(InstanceClass::EqualLengthJobs, 6, s, WeightFn{});
        Instance inst = gen_instance(InstanceClass::EqualLengthJobs, p);
        if (opt_equal_jobs(inst).value != brute_force_jobs(inst)) {
            os << "job oracle mismatch at seed " << s << "\n";
            ok = false;
        }
    }
    return ok;
}

bool suite_charging(std::ostream& os, bool conservation_only) {
    bool ok = true;
    auto pair = ran_j_pair();
    for (std::uint64_t s = 1; s <= 200; ++s) {
        GenParams p = params_for(InstanceClass::EqualLengthJobs, 6 + s % 5, s, WeightFn{});
        Instance inst = gen_instance(InstanceClass::EqualLengthJobs, p);
        MixtureResult mix = run_mixture(inst, pair);
        OptResult opt = opt_equal_jobs(inst);
        ChargeLedger led = compute_charges(opt.witness, mix.trace_a, mix.trace_b, inst);
        if (led.total_charged() != opt.value) {
            os << "conservation failed at seed " << s << "\n";
            ok = false;
        }
        if (conservation_only) continue;
        auto cls = classify_slots(led);
        auto pairing = pair_bad_slots(led, cls);
        auto rep = verify_ratio(led, cls, pairing);
        if (!rep.ok) {
            for (const auto& v : rep.violations) os << "seed " << s << ": " << v << "\n";
            ok = false;
        }
    }
    return ok;
}

bool suite_ran_d(std::ostream& os) {
    bool ok = true;
    RanDProbe pa, pb;
    auto pair = ran_d_pair_probed(&pa, &pb);
    WeightFn fn = benevolent_fn("reciprocal");
    for (std::uint64_t s = 1; s <= 500; ++s) {
        pa.clear();
        pb.clear();
        Instance inst = gen_instance(InstanceClass::DBenevolent, params_for(InstanceClass::DBenevolent, 10, s, fn));
        run_mixture(inst, pair);
        for (const auto& v : pa.violations) {
            os << "seed " << s << " (A): " << v << "\n";
            ok = false;
        }
        for (const auto& v : pb.violations) {
            os << "seed " << s << " (B): " << v << "\n";
            ok = false;
        }
    }
    return ok;
}

bool suite_convexity(std::ostream& os) {
    bool ok = true;
    std::vector<WeightFn> fns = {benevolent_fn("linear"), benevolent_fn("power", Rat(2)),
                                 benevolent_fn("quadratic", Rat(1), Rat(2))};
    SplitMix64 rng(7);
    for (const WeightFn& f : fns) {
        for (int it = 0; it < 2000; ++it) {
            std::size_t k = 1 + rng.below(4);
            Rat sum = 0, fsum = 0;
            for (std::size_t i = 0; i < k; ++i) {
                Rat len(1 + long(rng.below(12)), 1 + long(rng.below(3)));
                sum += len;
                fsum += f.eval(len);
            }
            Rat big = sum + Rat(long(rng.below(5)), 2);
            if (f.eval(big) < fsum) {
                os << "merged length beats the parts for " << f.kind_name() << "\n";
                ok = false;
            }
        }
    }
    return ok;
}

int cmd_charging_dump(const std::string& path, std::size_t jobs_cap) {
    Instance inst = read_instance_file(path);
    MixtureResult mix = run_mixture(inst, ran_j_pair());
    OptResult opt = opt_equal_jobs(inst, jobs_cap);
    ChargeLedger led = compute_charges(opt.witness, mix.trace_a, mix.trace_b, inst);
    auto cls = classify_slots(led);
    auto pairing = pair_bad_slots(led, cls);
    auto rep = verify_ratio(led, cls, pairing);
    json out;
    out["opt"] = rep.opt_value.str();
    out["ab_total"] = rep.ab_value.str();
    out["ok"] = rep.ok;
    out["violations"] = rep.violations;
    json slots = json::array();
    auto charge = [&](const std::optional<Charge>& c) -> json {
        if (!c) return nullptr;
        json j;
        j["weight"] = c->weight.str();
        j["from_job"] = inst.jobs[c->from_job].id;
        j["from_slot"] = c->from_slot;
        return j;
    };
    for (const auto& [s, c] : led.charges) {
        json row;
        row["slot"] = s;
        row["units"] = c.half_units() / 2.0;
        row["downward"] = charge(c.downward);
        row["self"] = charge(c.self);
        row["backward"] = charge(c.backward);
        if (auto acc = led.accepted_in(s)) row["accepted"] = inst.jobs[*acc].id;
        auto k = cls.kind.find(s);
        row["kind"] = k == cls.kind.end()          ? "good"
                      : k->second == SlotKind::Bad ? "bad"
                      : k->second == SlotKind::Mid ? "mid"
                                                   : "good";
        slots.push_back(row);
    }
    out["slots"] = slots;
    json pairs = json::array();
    for (auto [bad, good] : pairing) pairs.push_back({{"bad", bad}, {"good", good}});
    out["pairing"] = pairs;
    std::cout << out.dump(2) << "\n";
    return rep.ok ? 0 : 1;
}

int cmd_verify(const std::string& suite) {
    struct Entry {
        std::string name;
        std::function<bool(std::ostream&)> fn;
    };
    std::vector<Entry> entries = {
        {"oracles", [](std::ostream& os) { return suite_oracles(os); }},
        {"charging", [](std::ostream& os) { return suite_charging(os, false); }},
        {"conservation", [](std::ostream& os) { return suite_charging(os, true); }},
        {"ran-d-invariant", [](std::ostream& os) { return suite_ran_d(os); }},
        {"convexity", [](std::ostream& os) { return suite_convexity(os); }},
    };
    bool any = false, all_ok = true;
    for (const auto& e : entries) {
        if (suite != "all" && suite != e.name) continue;
        any = true;
        bool ok = e.fn(std::cerr);
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << e.name << "\n";
        all_ok = all_ok && ok;
    }
    if (!any) {
        std::cerr << "unknown suite '" << suite << "'\n";
        return 2;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic harness for barely random preemptive scheduling"};
    app.require_subcommand(1);

    std::string instance_path, policy = "ran", cls = "equal-length-intervals";
    std::string delta = "1/2", prob = "1/2", v1, out_path, suite = "all";
    std::string preset, fa, fb, builtin, eps, trace_a, trace_b;
    std::size_t n = 10, count = 100, jobs_cap = 12;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    bool brute = false, csv = false;

    auto* sim = app.add_subcommand("simulate", "run a policy pair and the offline optimum on an instance file");
    sim->add_option("--instance", instance_path)->required();
    sim->add_option("--policy", policy, "ran | ran-m | ran-c | ran-d | ran-j");
    sim->add_option("--opt-cap", jobs_cap, "size cap of the exact job optimum");
    sim->add_flag("--csv", csv, "one CSV row instead of JSON");
    sim->add_option("--trace-a", trace_a, "write the first half's trace here (JSON lines)");
    sim->add_option("--trace-b", trace_b, "write the second half's trace here");

    auto* adv = app.add_subcommand("adversary", "play the lower-bound game against a policy pair");
    adv->add_option("--policy", policy, "ran or a zoo pair name");
    adv->add_option("--delta", delta, "target gap: final ratio >= 2 - delta");
    adv->add_option("--p", prob, "probability of the pair's first half");
    adv->add_option("--v1", v1, "base weight of the opening bundle");
    adv->add_option("--out", out_path, "write the released instance here");

    auto* sweep = app.add_subcommand("sweep", "generate random instances and report worst-case ratios");
    sweep->add_option("--class", cls)->required();
    sweep->add_option("--policy", policy)->required();
    sweep->add_option("--n", n);
    sweep->add_option("--count", count);
    sweep->add_option("--seed", seed);
    sweep->add_option("--threads", threads);
    sweep->add_option("--opt-cap", jobs_cap);

    auto* verify = app.add_subcommand("verify", "run the self-check suites");
    verify->add_option("--suite", suite, "oracles | charging | conservation | ran-d-invariant | convexity | all");
    verify->add_option("--charging", instance_path,
                       "dump the charge ledger and bad-slot pairing of this instance as JSON");

    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("--class", cls);
    gen->add_option("--n", n);
    gen->add_option("--seed", seed);
    gen->add_option("--preset", preset, "weight function preset for benevolent classes");
    gen->add_option("--a", fa);
    gen->add_option("--b", fb);
    gen->add_option("--builtin", builtin, "three-jobs | single");
    gen->add_option("--eps", eps, "weight margin of the builtin three-jobs instance");
    gen->add_option("--out", out_path);

    auto* opt = app.add_subcommand("opt", "exact offline optimum of an instance file");
    opt->add_option("--instance", instance_path)->required();
    opt->add_flag("--brute", brute, "cross-check with the exhaustive oracle");
    opt->add_option("--opt-cap", jobs_cap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (sim->parsed()) return cmd_simulate(instance_path, policy, jobs_cap, csv, trace_a, trace_b);
        if (adv->parsed()) return cmd_adversary(policy, delta, prob, v1, out_path);
        if (sweep->parsed()) return cmd_sweep(cls, policy, n, count, seed, threads, jobs_cap);
        if (verify->parsed())
            return instance_path.empty() ? cmd_verify(suite) : cmd_charging_dump(instance_path, jobs_cap);
        if (gen->parsed()) return cmd_gen(cls, n, seed, preset, fa, fb, builtin, eps, out_path);
        if (opt->parsed()) return cmd_opt(instance_path, brute, jobs_cap);
    } catch (const SchedError& e) {
        std::cerr << e.what() << "\n";
        if (e.code == Err::StepCapExceeded) return 4;
        if (e.code == Err::ClassMismatch) return 3;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
