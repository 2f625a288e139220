#include "sched/engine.hpp"

#include <algorithm>
#include <cassert>

#include "sched/errors.hpp"

namespace sched {

Sim::Sim(std::unique_ptr<DecisionPolicy> policy) : policy_(std::move(policy)), value_(0) {
    refresh_wakeup(Rat(-1));
}

std::size_t Sim::add_job(const Job& j) {
    if (j.r < clock_) throw SchedError(Err::ReleaseInPast, "arrival " + j.r.str() + " before clock " + clock_.str());
    std::size_t idx = jobs_.size();
    jobs_.push_back(j);
    completed_.push_back(false);
    // keep the unprocessed tail of arrival_order_ sorted by (r, w, id)
    auto cmp = [&](std::size_t x, std::size_t y) {
        const Job &a = jobs_[x], &b = jobs_[y];
        if (a.r != b.r) return a.r < b.r;
        if (a.w != b.w) return a.w < b.w;
        return a.id < b.id;
    };
    auto pos = std::lower_bound(arrival_order_.begin() + long(next_arrival_), arrival_order_.end(), idx, cmp);
    arrival_order_.insert(pos, idx);
    return idx;
}

Sim::Due Sim::next_due(std::optional<Rat>& when) const {
    Due due = Due::None;
    if (next_arrival_ < arrival_order_.size()) {
        when = jobs_[arrival_order_[next_arrival_]].r;
        due = Due::Arrival;
    }
    if (wakeup_ && (!when || *wakeup_ <= *when)) {
        when = *wakeup_;
        due = Due::Wakeup;
    }
    if (running_) {
        Rat done = running_->start + jobs_[running_->job].p;
        if (!when || done <= *when) {
            when = done;
            due = Due::Completion;
        }
    }
    return due;
}

void Sim::refresh_wakeup(const Rat& now) {
    wakeup_ = policy_->next_wakeup(now, view());
    if (wakeup_ && *wakeup_ <= now)
        throw SchedError(Err::PolicyContractViolation,
                         policy_->name() + " requested a wakeup not after now");
}

void Sim::apply(const Action& a, const Rat& now) {
    switch (a.kind) {
        case Action::Kind::Continue:
            return;
        case Action::Kind::AbortAndStart: {
            if (!running_)
                throw SchedError(Err::PolicyContractViolation, policy_->name() + " aborted while idle");
            trace_.events.push_back({now, EventKind::Abort, running_->job});
            pending_.push_back(running_->job);  // aborted work is lost; the job may restart later
            running_.reset();
            [[fallthrough]];
        }
        case Action::Kind::StartNew: {
            if (running_)
                throw SchedError(Err::PolicyContractViolation, policy_->name() + " started while busy");
            auto it = std::find(pending_.begin(), pending_.end(), a.job);
            if (it == pending_.end())
                throw SchedError(Err::PolicyContractViolation,
                                 policy_->name() + " started an unknown or completed job");
            const Job& j = jobs_[a.job];
            if (now < j.r || now + j.p > j.d)
                throw SchedError(Err::PolicyContractViolation,
                                 policy_->name() + " started job '" + j.id + "' it cannot complete");
            pending_.erase(it);
            running_ = RunningInfo{a.job, now};
            trace_.events.push_back({now, EventKind::Start, a.job});
            return;
        }
    }
}

void Sim::process_one() {
    std::optional<Rat> when;
    Due due = next_due(when);
    assert(due != Due::None);
    Rat now = *when;
    clock_ = now;
    switch (due) {
        case Due::Completion: {
            std::size_t j = running_->job;
            trace_.events.push_back({now, EventKind::Complete, j});
            completed_[j] = true;
            value_ += jobs_[j].w;
            running_.reset();
            break;
        }
        case Due::Wakeup: {
            wakeup_.reset();
            apply(policy_->on_wakeup(now, view()), now);
            break;
        }
        case Due::Arrival: {
            std::size_t j = arrival_order_[next_arrival_++];
            pending_.push_back(j);
            apply(policy_->on_arrival(now, j, view()), now);
            break;
        }
        case Due::None:
            break;
    }
    refresh_wakeup(now);
    trace_.value = value_;
}

void Sim::run_through_arrivals() {
    while (next_arrival_ < arrival_order_.size()) process_one();
}

void Sim::drain() {
    run_through_arrivals();
    for (;;) {
        // Quiescent once nothing runs and no pending job could still start.
        if (!running_) {
            bool live = false;
            for (std::size_t j : pending_)
                if (clock_ <= jobs_[j].d - jobs_[j].p) { live = true; break; }
            if (!live) break;
        }
        std::optional<Rat> when;
        if (next_due(when) == Due::None) break;
        process_one();
    }
}

Trace run_online(const Instance& inst, const PolicyFactory& make) {
    Sim sim(make());
    for (const Job& j : inst.jobs) sim.add_job(j);
    sim.drain();
    return sim.trace();
}

MixtureResult run_mixture(const Instance& inst, const PolicyPair& pair) {
    if (pair.required_class && *pair.required_class != inst.cls)
        throw SchedError(Err::ClassMismatch, pair.name + " needs class " + class_name(*pair.required_class) +
                                                 ", instance is " + class_name(inst.cls));
    MixtureResult res;
    res.trace_a = run_online(inst, pair.make_a);
    res.trace_b = run_online(inst, pair.make_b);
    res.val_a = res.trace_a.value;
    res.val_b = res.trace_b.value;
    res.expected = pair.prob_a * res.val_a + (Rat(1) - pair.prob_a) * res.val_b;
    return res;
}

AdaptiveResult run_adaptive(AdversarySource& adv, const PolicyPair& pair) {
    Sim sa(pair.make_a());
    Sim sb(pair.make_b());
    std::vector<Job> released;
    Rat clock = 0;
    for (;;) {
        Observation obs{sa.running(), sb.running()};
        auto rel = adv.next(obs, clock, released);
        if (!rel) break;
        if (rel->jobs.empty())
            throw SchedError(Err::BadParams, "adversary released an empty batch");
        std::vector<Job> batch = rel->jobs;
        std::sort(batch.begin(), batch.end(), [](const Job& x, const Job& y) { return x.r < y.r; });
        for (const Job& j : batch) {
            if (j.r < clock) throw SchedError(Err::ReleaseInPast, "arrival " + j.r.str() + " at clock " + clock.str());
            released.push_back(j);
            sa.add_job(j);
            sb.add_job(j);
        }
        sa.run_through_arrivals();
        sb.run_through_arrivals();
        clock = batch.back().r;
    }
    sa.drain();
    sb.drain();

    AdaptiveResult out;
    out.instance.cls = InstanceClass::EqualLengthIntervals;
    out.instance.jobs = released;
    out.instance.normalize();
    out.released_count = released.size();
    out.val_a = sa.value();
    out.val_b = sb.value();
    out.expected = pair.prob_a * out.val_a + (Rat(1) - pair.prob_a) * out.val_b;
    return out;
}

}  // namespace sched
