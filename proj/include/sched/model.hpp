#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sched/rat.hpp"

namespace sched {

/// A job: arrives at r, must run uninterrupted for p time units and finish
/// by d to count its weight w. An interval is a job with d == r + p, so it
/// can only ever be started exactly at its arrival.
struct Job {
    std::string id;
    Rat r, d, p, w;

    bool is_interval() const { return d == r + p; }
};

/// Builds an interval (tight deadline d = r + p).
Job make_interval(std::string id, const Rat& r, const Rat& p, const Rat& w);

enum class InstanceClass {
    EqualLengthIntervals,
    Monotone,
    CBenevolent,
    DBenevolent,
    EqualLengthJobs,
};

std::string class_name(InstanceClass c);
std::optional<InstanceClass> class_from_name(const std::string& s);

/// Weight-from-length function for the benevolent classes. Only presets
/// that evaluate to exact rationals are offered; ExpDecay is defined on
/// integer lengths only.
struct WeightFn {
    enum class Kind { Linear, Power, Quadratic, Reciprocal, ExpDecay };
    Kind kind = Kind::Linear;
    Rat a = 1;  // Power: integer exponent; Quadratic: p^2 coefficient; ExpDecay: scale
    Rat b = 0;  // Quadratic: linear coefficient

    Rat eval(const Rat& len) const;
    /// True if the preset family satisfies the increasing-convex axioms.
    bool is_c_kind() const { return kind == Kind::Linear || kind == Kind::Power || kind == Kind::Quadratic; }
    /// True if the preset family is positive and decreasing on (0, inf).
    bool is_d_kind() const { return kind == Kind::Reciprocal || kind == Kind::ExpDecay; }

    std::string kind_name() const;
    static std::optional<WeightFn::Kind> kind_from_name(const std::string&);
};

struct Instance {
    InstanceClass cls = InstanceClass::EqualLengthIntervals;
    std::optional<WeightFn> fn;
    std::vector<Job> jobs;  // kept sorted by (r, id); ids unique

    /// Sorts jobs by (r, id) and checks basic job invariants
    /// (unique ids, r >= 0, p > 0, d >= r + p, w >= 0).
    void normalize();

    std::size_t index_of(const std::string& id) const;  // throws UnknownJobId
    bool all_intervals() const;
};

// ---------------------------------------------------------------------------
// Class validation

struct ClassReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(std::string v) { ok = false; violations.push_back(std::move(v)); }
};

/// Checks the declared class tag against the jobs: equal-length classes must
/// have p = 1 everywhere, monotone instances must not let an earlier arrival
/// have a later deadline, and benevolent instances must satisfy w = f(p) with
/// f obeying its axioms on the lengths present.
ClassReport validate_class(const Instance& inst);

// ---------------------------------------------------------------------------
// Traces

enum class EventKind { Start, Abort, Complete };

struct TraceEvent {
    Rat t;
    EventKind kind;
    std::size_t job;  // index into Instance::jobs
};

struct Trace {
    std::vector<TraceEvent> events;
    Rat value;  // total weight of completed jobs

    std::vector<std::size_t> completed_jobs() const;
};

/// Sum of weights of completed jobs (trace assumed feasible).
Rat schedule_value(const Trace& trace, const Instance& inst);

struct FeasibilityReport {
    bool ok = true;
    Rat value;
    std::vector<std::string> violations;
    void fail(std::string v) { ok = false; violations.push_back(std::move(v)); }
};

/// Replays the trace and checks: events are time-ordered, aborts/completions
/// close the most recent open start, at most one job runs at a time, every
/// completion follows an uninterrupted run of exactly p inside [r, d], and
/// each job completes at most once. Unknown job indices throw UnknownJobId.
FeasibilityReport schedule_feasible(const Trace& trace, const Instance& inst);

/// Half-open slots [start, end). Maps each slot to the job that was started
/// inside it and later ran to completion ("accepted" in that slot).
/// Slots must be disjoint and ordered; a Start outside every slot throws
/// SlotGap, two accepted jobs in one slot throw PolicyContractViolation.
std::map<std::size_t, std::size_t> accepted_per_slot(
    const Trace& trace, const std::vector<std::pair<Rat, Rat>>& slots);

/// Unit slots [i-1, i) for i = 1..count, the slot layout used by the
/// equal-length policies.
std::vector<std::pair<Rat, Rat>> unit_slots(std::size_t count);

}  // namespace sched
