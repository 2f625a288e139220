#include "sched/model.hpp"

#include <algorithm>
#include <set>

#include "sched/errors.hpp"

namespace sched {

Job make_interval(std::string id, const Rat& r, const Rat& p, const Rat& w) {
    if (p.sign() <= 0) throw SchedError(Err::NonPositiveLength, "interval '" + id + "' has p <= 0");
    if (w.sign() < 0) throw SchedError(Err::BadParams, "negative weight");
    return Job{std::move(id), r, r + p, p, w};
}

std::string class_name(InstanceClass c) {
    switch (c) {
        case InstanceClass::EqualLengthIntervals: return "equal-length-intervals";
        case InstanceClass::Monotone: return "monotone";
        case InstanceClass::CBenevolent: return "c-benevolent";
        case InstanceClass::DBenevolent: return "d-benevolent";
        case InstanceClass::EqualLengthJobs: return "equal-length-jobs";
    }
    return "?";
}

std::optional<InstanceClass> class_from_name(const std::string& s) {
    for (auto c : {InstanceClass::EqualLengthIntervals, InstanceClass::Monotone,
                   InstanceClass::CBenevolent, InstanceClass::DBenevolent,
                   InstanceClass::EqualLengthJobs})
        if (class_name(c) == s) return c;
    return std::nullopt;
}

static Rat pow_rat(const Rat& base, long e) {
    Rat out = 1;
    for (long i = 0; i < e; ++i) out *= base;
    return out;
}

Rat WeightFn::eval(const Rat& len) const {
    if (len.sign() < 0) throw SchedError(Err::BadParams, "weight function needs length >= 0");
    if (len.is_zero()) {
        if (kind == Kind::Linear || kind == Kind::Power || kind == Kind::Quadratic) return 0;
        throw SchedError(Err::BadParams, "decreasing presets are defined for length > 0 only");
    }
    switch (kind) {
        case Kind::Linear:
            return a * len;
        case Kind::Power: {
            if (!a.is_integer() || a.sign() <= 0)
                throw SchedError(Err::BadPreset, "power exponent must be a positive integer");
            return pow_rat(len, a.floor_long());
        }
        case Kind::Quadratic:
            return a * len * len + b * len;
        case Kind::Reciprocal:
            return Rat(1) / len;
        case Kind::ExpDecay: {
            // a * 2^(-len); exact only at integer lengths.
            if (!len.is_integer())
                throw SchedError(Err::BadPreset, "exp-decay preset is defined on integer lengths only");
            return a / pow_rat(Rat(2), len.floor_long());
        }
    }
    throw SchedError(Err::BadPreset, "unknown weight function kind");
}

std::string WeightFn::kind_name() const {
    switch (kind) {
        case Kind::Linear: return "linear";
        case Kind::Power: return "power";
        case Kind::Quadratic: return "quadratic";
        case Kind::Reciprocal: return "reciprocal";
        case Kind::ExpDecay: return "exp-decay";
    }
    return "?";
}

std::optional<WeightFn::Kind> WeightFn::kind_from_name(const std::string& s) {
    if (s == "linear") return Kind::Linear;
    if (s == "power") return Kind::Power;
    if (s == "quadratic") return Kind::Quadratic;
    if (s == "reciprocal") return Kind::Reciprocal;
    if (s == "exp-decay") return Kind::ExpDecay;
    return std::nullopt;
}

void Instance::normalize() {
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& x, const Job& y) {
        if (x.r != y.r) return x.r < y.r;
        return x.id < y.id;
    });
    std::set<std::string> seen;
    for (const Job& j : jobs) {
        if (!seen.insert(j.id).second) throw SchedError(Err::BadParams, "duplicate job id '" + j.id + "'");
        if (j.r.sign() < 0) throw SchedError(Err::BadParams, "job '" + j.id + "' arrives before time 0");
        if (j.p.sign() <= 0) throw SchedError(Err::NonPositiveLength, "job '" + j.id + "'");
        if (j.d < j.r + j.p) throw SchedError(Err::BadParams, "job '" + j.id + "' cannot fit before its deadline");
        if (j.w.sign() < 0) throw SchedError(Err::BadParams, "job '" + j.id + "' has negative weight");
    }
}

std::size_t Instance::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < jobs.size(); ++i)
        if (jobs[i].id == id) return i;
    throw SchedError(Err::UnknownJobId, id);
}

bool Instance::all_intervals() const {
    for (const Job& j : jobs)
        if (!j.is_interval()) return false;
    return true;
}

ClassReport validate_class(const Instance& inst) {
    ClassReport rep;
    auto require_unit = [&](const char* what) {
        for (const Job& j : inst.jobs)
            if (j.p != Rat(1)) rep.fail(std::string(what) + ": job '" + j.id + "' has length " + j.p.str() + ", expected 1");
    };
    auto require_intervals = [&] {
        for (const Job& j : inst.jobs)
            if (!j.is_interval()) rep.fail("job '" + j.id + "' is not an interval (d != r + p)");
    };

    switch (inst.cls) {
        case InstanceClass::EqualLengthIntervals:
            require_unit("equal-length intervals");
            require_intervals();
            break;
        case InstanceClass::EqualLengthJobs:
            require_unit("equal-length jobs");
            break;
        case InstanceClass::Monotone: {
            require_intervals();
            // earlier arrival must not have a strictly later deadline
            for (std::size_t i = 0; i < inst.jobs.size(); ++i)
                for (std::size_t k = 0; k < inst.jobs.size(); ++k)
                    if (inst.jobs[i].r < inst.jobs[k].r && inst.jobs[i].d > inst.jobs[k].d)
                        rep.fail("monotone violated by '" + inst.jobs[i].id + "' and '" + inst.jobs[k].id + "'");
            break;
        }
        case InstanceClass::CBenevolent:
        case InstanceClass::DBenevolent: {
            require_intervals();
            if (!inst.fn) {
                rep.fail("benevolent instance without a weight function");
                break;
            }
            const WeightFn& f = *inst.fn;
            bool c = inst.cls == InstanceClass::CBenevolent;
            if (c && !f.is_c_kind()) rep.fail("weight function kind '" + f.kind_name() + "' is not increasing-convex");
            if (!c && !f.is_d_kind()) rep.fail("weight function kind '" + f.kind_name() + "' is not decreasing");
            std::vector<Rat> lens;
            for (const Job& j : inst.jobs) {
                Rat expect = f.eval(j.p);
                if (j.w != expect)
                    rep.fail("job '" + j.id + "' weight " + j.w.str() + " != f(p) = " + expect.str());
                if (expect.sign() <= 0) rep.fail("f(p) must be positive for p > 0 (job '" + j.id + "')");
                lens.push_back(j.p);
            }
            std::sort(lens.begin(), lens.end());
            lens.erase(std::unique(lens.begin(), lens.end()), lens.end());
            for (std::size_t i = 0; i + 1 < lens.size(); ++i) {
                Rat lo = f.eval(lens[i]), hi = f.eval(lens[i + 1]);
                if (c && !(lo < hi)) rep.fail("f not strictly increasing on lengths present");
                if (!c && !(lo > hi)) rep.fail("f not strictly decreasing on lengths present");
            }
            if (c) {
                // slope test on the lengths present: increments must not shrink
                for (std::size_t i = 0; i + 2 < lens.size(); ++i) {
                    Rat s1 = (f.eval(lens[i + 1]) - f.eval(lens[i])) / (lens[i + 1] - lens[i]);
                    Rat s2 = (f.eval(lens[i + 2]) - f.eval(lens[i + 1])) / (lens[i + 2] - lens[i + 1]);
                    if (s1 > s2) rep.fail("f not convex on lengths present");
                }
            }
            break;
        }
    }
    return rep;
}

std::vector<std::size_t> Trace::completed_jobs() const {
    std::vector<std::size_t> out;
    for (const TraceEvent& e : events)
        if (e.kind == EventKind::Complete) out.push_back(e.job);
    return out;
}

Rat schedule_value(const Trace& trace, const Instance& inst) {
    Rat v = 0;
    for (std::size_t j : trace.completed_jobs()) {
        if (j >= inst.jobs.size()) throw SchedError(Err::UnknownJobId, "job index out of range");
        v += inst.jobs[j].w;
    }
    return v;
}

FeasibilityReport schedule_feasible(const Trace& trace, const Instance& inst) {
    FeasibilityReport rep;
    rep.value = 0;
    std::optional<std::pair<std::size_t, Rat>> running;  // (job, start)
    std::vector<int> completions(inst.jobs.size(), 0);
    Rat last_t = 0;
    bool first = true;
    for (const TraceEvent& e : trace.events) {
        if (e.job >= inst.jobs.size()) throw SchedError(Err::UnknownJobId, "job index out of range");
        const Job& j = inst.jobs[e.job];
        if (!first && e.t < last_t) rep.fail("events not time-ordered at t=" + e.t.str());
        first = false;
        last_t = e.t;
        switch (e.kind) {
            case EventKind::Start:
                if (running) rep.fail("start of '" + j.id + "' while '" + inst.jobs[running->first].id + "' is running");
                if (e.t < j.r) rep.fail("start of '" + j.id + "' before its arrival");
                running = {e.job, e.t};
                break;
            case EventKind::Abort:
                if (!running || running->first != e.job)
                    rep.fail("abort of '" + j.id + "' which is not the running job");
                running.reset();
                break;
            case EventKind::Complete: {
                if (!running || running->first != e.job) {
                    rep.fail("completion of '" + j.id + "' which is not the running job");
                    break;
                }
                if (e.t != running->second + j.p)
                    rep.fail("completion of '" + j.id + "' after a run of length != p");
                if (e.t > j.d) rep.fail("completion of '" + j.id + "' after its deadline");
                if (++completions[e.job] > 1) rep.fail("job '" + j.id + "' completed twice");
                rep.value += j.w;
                running.reset();
                break;
            }
        }
    }
    return rep;
}

std::vector<std::pair<Rat, Rat>> unit_slots(std::size_t count) {
    std::vector<std::pair<Rat, Rat>> s;
    s.reserve(count);
    for (std::size_t i = 0; i < count; ++i) s.emplace_back(Rat(long(i)), Rat(long(i) + 1));
    return s;
}

std::map<std::size_t, std::size_t> accepted_per_slot(
    const Trace& trace, const std::vector<std::pair<Rat, Rat>>& slots) {
    for (std::size_t i = 0; i + 1 < slots.size(); ++i)
        if (!(slots[i].second <= slots[i + 1].first))
            throw SchedError(Err::BadParams, "slots not disjoint/ordered");

    auto slot_of = [&](const Rat& t) -> std::size_t {
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (slots[i].first <= t && t < slots[i].second) return i;
        throw SchedError(Err::SlotGap, "start time " + t.str() + " lies in no slot");
    };

    std::map<std::size_t, std::size_t> out;
    std::optional<std::pair<std::size_t, std::size_t>> open;  // (job, start slot)
    for (const TraceEvent& e : trace.events) {
        if (e.kind == EventKind::Start) {
            open = {e.job, slot_of(e.t)};
        } else if (e.kind == EventKind::Abort) {
            open.reset();
        } else if (e.kind == EventKind::Complete && open && open->first == e.job) {
            std::size_t s = open->second;
            if (out.count(s))
                throw SchedError(Err::PolicyContractViolation, "two jobs accepted in one slot");
            out[s] = e.job;
            open.reset();
        }
    }
    return out;
}

}  // namespace sched
