#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sched/model.hpp"

namespace sched {

struct RunningInfo {
    std::size_t job;
    Rat start;
};

/// What a policy is allowed to observe: the clock, its own running job,
/// jobs that have already arrived, and its pending set. Policies must not
/// look at jobs that have not arrived yet; the engine only hands out
/// indices of arrived jobs.
class SimView {
public:
    SimView(const std::vector<Job>* jobs, const std::optional<RunningInfo>* running,
            const std::vector<std::size_t>* pending, const std::vector<bool>* completed)
        : jobs_(jobs), running_(running), pending_(pending), completed_(completed) {}

    const Job& job(std::size_t idx) const { return (*jobs_)[idx]; }
    const std::optional<RunningInfo>& running() const { return *running_; }
    /// Arrived, not completed, not currently running. May contain jobs that
    /// can no longer be completed; callers filter with can_complete().
    const std::vector<std::size_t>& pending() const { return *pending_; }
    bool completed(std::size_t idx) const { return (*completed_)[idx]; }

    bool can_complete(std::size_t idx, const Rat& now) const {
        return now + job(idx).p <= job(idx).d;
    }

private:
    const std::vector<Job>* jobs_;
    const std::optional<RunningInfo>* running_;
    const std::vector<std::size_t>* pending_;
    const std::vector<bool>* completed_;
};

struct Action {
    enum class Kind { Continue, StartNew, AbortAndStart };
    Kind kind = Kind::Continue;
    std::size_t job = 0;

    static Action cont() { return {}; }
    static Action start(std::size_t j) { return {Kind::StartNew, j}; }
    static Action abort_start(std::size_t j) { return {Kind::AbortAndStart, j}; }
};

/// A deterministic event-driven policy. The engine calls on_arrival for each
/// arriving job (ties processed in ascending (w, id) order, after any
/// completion and wakeup due at the same instant) and on_wakeup at times the
/// policy requested via next_wakeup. Identical event histories must yield
/// identical actions.
class DecisionPolicy {
public:
    virtual ~DecisionPolicy() = default;
    virtual Action on_arrival(const Rat& now, std::size_t job, const SimView& view) = 0;
    virtual Action on_wakeup(const Rat& now, const SimView& view) = 0;
    /// Earliest time strictly after `now` at which the policy wants a wakeup,
    /// or nullopt. Queried after every processed event (and once at start
    /// with now = -1).
    virtual std::optional<Rat> next_wakeup(const Rat& now, const SimView& view) = 0;
    virtual std::string name() const = 0;
};

using PolicyFactory = std::function<std::unique_ptr<DecisionPolicy>()>;

/// Two deterministic policies mixed once at time zero: the first is executed
/// with probability prob_a, the second with 1 - prob_a.
struct PolicyPair {
    std::string name;
    std::optional<InstanceClass> required_class;  // nullopt: class-agnostic
    Rat prob_a = Rat(1, 2);
    PolicyFactory make_a, make_b;
};

/// Single-policy simulation, incrementally fed with arrivals so that an
/// adaptive adversary can interleave releases with observations. Feeding the
/// whole instance up front and draining reproduces the oblivious run exactly.
class Sim {
public:
    Sim(std::unique_ptr<DecisionPolicy> policy);

    /// Appends a job; its arrival must not precede any already-processed
    /// event time (ReleaseInPast otherwise).
    std::size_t add_job(const Job& j);

    /// Processes events up to and including the last currently-known arrival;
    /// completions and wakeups strictly after it are left for later.
    void run_through_arrivals();

    /// Processes everything that remains until the policy is quiescent.
    void drain();

    const std::optional<RunningInfo>& running() const { return running_; }
    const std::vector<Job>& jobs() const { return jobs_; }
    const Trace& trace() const { return trace_; }
    const Rat& value() const { return value_; }
    SimView view() const { return SimView(&jobs_, &running_, &pending_, &completed_); }

private:
    enum class Due { None, Completion, Wakeup, Arrival };
    Due next_due(std::optional<Rat>& when) const;
    void process_one();
    void apply(const Action& a, const Rat& now);
    void refresh_wakeup(const Rat& now);

    std::unique_ptr<DecisionPolicy> policy_;
    std::vector<Job> jobs_;
    std::vector<std::size_t> arrival_order_;  // indices sorted by (r, w, id)
    std::size_t next_arrival_ = 0;
    std::optional<RunningInfo> running_;
    std::vector<std::size_t> pending_;
    std::vector<bool> completed_;
    std::optional<Rat> wakeup_;
    Rat clock_ = Rat(-1);
    Trace trace_;
    Rat value_;
};

/// Runs one policy over a full instance.
Trace run_online(const Instance& inst, const PolicyFactory& make);

struct MixtureResult {
    Rat val_a, val_b, expected;
    Trace trace_a, trace_b;
};

/// Runs both halves of the pair independently on the same instance;
/// expected = prob_a * val(A) + (1 - prob_a) * val(B), exactly.
/// Throws ClassMismatch if the pair declares a class the instance lacks.
MixtureResult run_mixture(const Instance& inst, const PolicyPair& pair);

// ---------------------------------------------------------------------------
// Adaptive adversary loop

struct Observation {
    std::optional<RunningInfo> a, b;
};

struct Release {
    std::vector<Job> jobs;
};

/// Source of adaptively chosen arrivals. next() is called once before
/// anything is released and then immediately after the last arrival of each
/// release has been processed; returning nullopt stops the game. The
/// observation carries only the running jobs of the two policy halves.
class AdversarySource {
public:
    virtual ~AdversarySource() = default;
    virtual std::optional<Release> next(const Observation& obs, const Rat& clock,
                                        const std::vector<Job>& released_so_far) = 0;
};

struct AdaptiveResult {
    Instance instance;  // everything that was released, as a normal instance
    Rat val_a, val_b, expected;
    std::size_t released_count = 0;
};

/// Alternates adversary releases with policy reactions until the adversary
/// stops, then lets both simulations run to completion. Release times must
/// not precede the clock (ReleaseInPast).
AdaptiveResult run_adaptive(AdversarySource& adv, const PolicyPair& pair);

}  // namespace sched
