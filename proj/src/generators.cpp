#include "sched/generators.hpp"

#include <algorithm>

#include "sched/errors.hpp"

namespace sched {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

namespace {

std::string pad_id(const std::string& prefix, std::size_t i, std::size_t width = 4) {
    std::string num = std::to_string(i);
    while (num.size() < width) num.insert(num.begin(), '0');
    return prefix + num;
}

// uniform grid point in [lo, hi] with denominator den
Rat grid_pick(SplitMix64& rng, const Rat& lo, const Rat& hi, long den) {
    Rat span = hi - lo;
    long steps = (span * Rat(den)).floor_long();
    return lo + Rat(long(rng.below(std::uint64_t(steps + 1))), den);
}

}  // namespace

Instance gen_instance(InstanceClass cls, const GenParams& params) {
    if (params.grid_den <= 0 || params.w_min.sign() <= 0 || params.w_max < params.w_min ||
        params.horizon.sign() < 0 || params.max_slack.sign() < 0 || params.max_len.sign() <= 0)
        throw SchedError(Err::BadParams, "gen_instance");

    SplitMix64 rng(params.seed);
    Instance inst;
    inst.cls = cls;
    for (std::size_t i = 0; i < params.n; ++i) {
        Job j;
        j.id = pad_id("j", i);
        j.r = grid_pick(rng, Rat(0), params.horizon, params.grid_den);
        switch (cls) {
            case InstanceClass::EqualLengthIntervals:
                j.p = 1;
                j.d = j.r + 1;
                j.w = grid_pick(rng, params.w_min, params.w_max, params.grid_den);
                break;
            case InstanceClass::EqualLengthJobs:
                j.p = 1;
                j.d = j.r + 1 + grid_pick(rng, Rat(0), params.max_slack, params.grid_den);
                j.w = grid_pick(rng, params.w_min, params.w_max, params.grid_den);
                break;
            case InstanceClass::Monotone:
            case InstanceClass::CBenevolent:
            case InstanceClass::DBenevolent:
                j.p = 1;  // placeholder, fixed up below
                j.d = j.r + 1;
                j.w = grid_pick(rng, params.w_min, params.w_max, params.grid_den);
                break;
        }
        inst.jobs.push_back(std::move(j));
    }

    if (cls == InstanceClass::Monotone) {
        // deadlines non-decreasing in arrival order
        std::sort(inst.jobs.begin(), inst.jobs.end(),
                  [](const Job& a, const Job& b) { return a.r < b.r || (a.r == b.r && a.id < b.id); });
        Rat d_prev = 0;
        for (Job& j : inst.jobs) {
            Rat gap = grid_pick(rng, Rat(1, params.grid_den), Rat(3), params.grid_den);
            j.d = rat_max(d_prev, j.r) + gap;
            j.p = j.d - j.r;
            d_prev = j.d;
        }
    } else if (cls == InstanceClass::CBenevolent || cls == InstanceClass::DBenevolent) {
        inst.fn = params.fn;
        bool integer_lengths = params.fn.kind == WeightFn::Kind::ExpDecay;
        for (Job& j : inst.jobs) {
            j.p = integer_lengths ? Rat(1 + long(rng.below(std::uint64_t(rat_max(params.max_len, Rat(1)).floor_long()))))
                                  : grid_pick(rng, Rat(1, params.grid_den), params.max_len, params.grid_den);
            j.d = j.r + j.p;
            j.w = params.fn.eval(j.p);
        }
    }

    inst.normalize();
    return inst;
}

std::vector<Job> build_set(const Rat& v, const Rat& w, const Rat& eps, const Rat& t0,
                           const Rat& window, const std::string& id_prefix) {
    if (v.sign() < 0 || w < v || eps.sign() <= 0)
        throw SchedError(Err::BadRange, "build_set needs 0 <= v <= w and eps > 0");
    if (window.sign() <= 0 || window >= Rat(1))
        throw SchedError(Err::BadRange, "build_set needs 0 < window < 1");

    std::vector<Job> out;
    if (v == w) {
        out.push_back(make_interval(pad_id(id_prefix, 0), t0, Rat(1), v));
        return out;
    }
    // the effective step is the largest value <= eps dividing w - v
    long k = ceil_div_long(w - v, eps);
    Rat step = (w - v) / Rat(k);
    long m = k + 1;
    Rat eta = window / Rat(m);
    for (long i = 0; i < m; ++i)
        out.push_back(make_interval(pad_id(id_prefix, std::size_t(i)), t0 + Rat(i) * eta, Rat(1),
                                    v + Rat(i) * step));
    return out;
}

WeightFn benevolent_fn(const std::string& preset, const Rat& a, const Rat& b) {
    WeightFn f;
    auto kind = WeightFn::kind_from_name(preset);
    if (!kind) throw SchedError(Err::BadPreset, "unknown preset '" + preset + "'");
    f.kind = *kind;
    f.a = a;
    f.b = b;
    switch (f.kind) {
        case WeightFn::Kind::Linear:
            if (a.sign() <= 0) throw SchedError(Err::BadPreset, "linear needs a > 0");
            break;
        case WeightFn::Kind::Power:
            if (!a.is_integer() || a.sign() <= 0)
                throw SchedError(Err::BadPreset, "power needs a positive integer exponent");
            break;
        case WeightFn::Kind::Quadratic:
            if (a.sign() <= 0 || b.sign() < 0)
                throw SchedError(Err::BadPreset, "quadratic needs a > 0, b >= 0");
            break;
        case WeightFn::Kind::Reciprocal:
            break;
        case WeightFn::Kind::ExpDecay:
            if (a.sign() <= 0) throw SchedError(Err::BadPreset, "exp-decay needs a > 0");
            break;
    }
    return f;
}

Instance tight_three_jobs(const Rat& eps) {
    if (eps.sign() < 0) throw SchedError(Err::BadParams, "eps must be >= 0");
    Instance inst;
    inst.cls = InstanceClass::EqualLengthJobs;
    inst.jobs = {
        Job{"X", Rat(0), Rat(3), Rat(1), Rat(1) + eps},
        Job{"Y", Rat(0), Rat(1), Rat(1), Rat(1)},
        Job{"Z", Rat(1), Rat(2), Rat(1), Rat(1)},
    };
    inst.normalize();
    return inst;
}

Instance single_interval(const Rat& w) {
    Instance inst;
    inst.cls = InstanceClass::EqualLengthIntervals;
    inst.jobs = {make_interval("I", Rat(0), Rat(1), w)};
    inst.normalize();
    return inst;
}

}  // namespace sched
