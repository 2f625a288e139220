#include "sched/policies.hpp"

#include <cassert>
#include <memory>

namespace sched {

namespace {

bool a_half(Half h) { return h == Half::A; }

// Slot s_i covers [i-1, i); the A half accepts where i is odd, i.e. where
// floor(t) is even.
bool unit_slot_mine(Half h, const Rat& t) {
    long f = t.floor_long();
    bool even = (f % 2 == 0);
    return a_half(h) ? even : !even;
}

Rat unit_slot_start(const Rat& t) { return Rat(t.floor_long()); }

// ---------------------------------------------------------------------------
// Equal-length intervals.
//
// In each of its slots the policy starts the first arrival and switches to
// any strictly heavier one; the survivor runs to completion through the next
// slot, during which all arrivals are ignored.
class RanPolicy final : public DecisionPolicy {
public:
    explicit RanPolicy(Half h) : half_(h) {}

    Action on_arrival(const Rat& now, std::size_t job, const SimView& view) override {
        if (!unit_slot_mine(half_, now)) return Action::cont();
        const auto& run = view.running();
        if (!run) return Action::start(job);
        if (run->start < unit_slot_start(now)) return Action::cont();  // committed carry-over
        if (view.job(job).w > view.job(run->job).w) return Action::abort_start(job);
        return Action::cont();
    }
    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return a_half(half_) ? "ran.A" : "ran.B"; }

private:
    Half half_;
};

// ---------------------------------------------------------------------------
// Equal-length jobs with restarts.
//
// At the start of each of its slots the policy starts the heaviest pending
// job that can still meet its deadline (ties to the smallest id); strictly
// heavier arrivals within the slot preempt, and the preempted job stays
// pending for a possible restart. The slot-end survivor runs to completion.
class RanJPolicy final : public DecisionPolicy {
public:
    explicit RanJPolicy(Half h) : half_(h) {}

    Action on_arrival(const Rat& now, std::size_t job, const SimView& view) override {
        if (!unit_slot_mine(half_, now)) return Action::cont();
        const auto& run = view.running();
        if (!run) return Action::start(job);
        if (run->start < unit_slot_start(now)) return Action::cont();
        if (view.job(job).w > view.job(run->job).w) return Action::abort_start(job);
        return Action::cont();
    }

    Action on_wakeup(const Rat& now, const SimView& view) override {
        if (view.running()) return Action::cont();
        std::optional<std::size_t> best;
        for (std::size_t j : view.pending()) {
            if (!view.can_complete(j, now)) continue;
            if (!best || view.job(j).w > view.job(*best).w ||
                (view.job(j).w == view.job(*best).w && view.job(j).id < view.job(*best).id))
                best = j;
        }
        return best ? Action::start(*best) : Action::cont();
    }

    std::optional<Rat> next_wakeup(const Rat& now, const SimView&) override {
        // next slot start of my parity strictly after now
        long s = now.floor_long();
        while (Rat(s) <= now || !unit_slot_mine(half_, Rat(s))) ++s;
        return Rat(s);
    }

    std::string name() const override { return a_half(half_) ? "ran-j.A" : "ran-j.B"; }

private:
    Half half_;
};

// ---------------------------------------------------------------------------
// Monotone intervals.
//
// Work is split into phases. The earliest-deadline interval of the opening
// instant fixes slot s1 = [r(I0), d(I0)); in slot i the acceptor (A when i is
// odd) keeps the heaviest arrival, the other half completes its previous
// acceptance, and s_{i+1} = [d(I_{i-1}), d(I_i)). Both halves track the full
// slot machinery; only the acceptor half acts.
class RanMPolicy final : public DecisionPolicy {
public:
    explicit RanMPolicy(Half h) : half_(h) {}

    Action on_arrival(const Rat& now, std::size_t job, const SimView& view) override {
        roll(now, view);
        const Job& j = view.job(job);
        if (!phase_) {
            phase_ = true;
            slot_ = 1;
            phase_t0_ = now;
            slot_end_ = j.d;
            cur_ = job;
            return acceptor_is_me() ? Action::start(job) : Action::cont();
        }
        if (slot_ == 1 && now == phase_t0_) {
            // opening batch: earliest deadline fixes the slot end, the
            // acceptor races to the heaviest
            if (j.d < slot_end_) slot_end_ = j.d;
            if (j.w > view.job(*cur_).w) {
                cur_ = job;
                return acceptor_is_me() ? Action::abort_start(job) : Action::cont();
            }
            return Action::cont();
        }
        assert(j.d >= slot_end_ && "monotone instance required");
        if (!cur_) {
            cur_ = job;
            return acceptor_is_me() ? Action::start(job) : Action::cont();
        }
        if (j.w > view.job(*cur_).w) {
            cur_ = job;
            return acceptor_is_me() ? Action::abort_start(job) : Action::cont();
        }
        return Action::cont();
    }

    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return a_half(half_) ? "ran-m.A" : "ran-m.B"; }

private:
    bool acceptor_is_me() const { return (slot_ % 2 == 1) == a_half(half_); }

    void roll(const Rat& t, const SimView& view) {
        while (phase_ && t >= slot_end_) {
            if (cur_ && view.job(*cur_).d > slot_end_) {
                ++slot_;
                slot_end_ = view.job(*cur_).d;
                cur_.reset();
            } else {
                phase_ = false;  // accepted chain ended exactly at the slot end
            }
        }
    }

    Half half_;
    bool phase_ = false;
    long slot_ = 0;
    Rat phase_t0_, slot_end_;
    std::optional<std::size_t> cur_;
};

// ---------------------------------------------------------------------------
// C-benevolent intervals.
//
// The B half starts and completes the opening interval I0 (longest of the
// opening instant). In slot i the free half tracks the longest interval that
// arrives in the slot and ends strictly after the slot end; intervals
// contained in the slot are ignored.
class RanCPolicy final : public DecisionPolicy {
public:
    explicit RanCPolicy(Half h) : half_(h) {}

    Action on_arrival(const Rat& now, std::size_t job, const SimView& view) override {
        roll(now, view);
        const Job& j = view.job(job);
        if (!phase_) {
            phase_ = true;
            slot_ = 1;
            phase_t0_ = now;
            opener_ = job;
            slot_end_ = j.d;
            cur_.reset();
            return half_ == Half::B ? Action::start(job) : Action::cont();
        }
        if (slot_ == 1 && now == phase_t0_) {
            if (j.p > view.job(*opener_).p) {
                opener_ = job;
                slot_end_ = j.d;
                return half_ == Half::B ? Action::abort_start(job) : Action::cont();
            }
            return Action::cont();
        }
        if (!(j.d > slot_end_)) return Action::cont();  // contained in the slot: ignored
        if (!cur_) {
            cur_ = job;
            return acceptor_is_me() ? Action::start(job) : Action::cont();
        }
        if (j.p > view.job(*cur_).p) {
            cur_ = job;
            return acceptor_is_me() ? Action::abort_start(job) : Action::cont();
        }
        return Action::cont();
    }

    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return a_half(half_) ? "ran-c.A" : "ran-c.B"; }

private:
    bool acceptor_is_me() const { return (slot_ % 2 == 1) == a_half(half_); }

    void roll(const Rat& t, const SimView& view) {
        while (phase_ && t >= slot_end_) {
            if (cur_) {
                assert(view.job(*cur_).d > slot_end_);
                ++slot_;
                slot_end_ = view.job(*cur_).d;
                cur_.reset();
            } else {
                phase_ = false;
            }
        }
    }

    Half half_;
    bool phase_ = false;
    long slot_ = 0;
    Rat phase_t0_, slot_end_;
    std::optional<std::size_t> opener_, cur_;
};

// ---------------------------------------------------------------------------
// D-benevolent intervals.
//
// Slots end at a provisional time e that can only shrink. The acceptor holds
// the main interval I_M, the other half completes the residual I_R, and
// e == d(I_R) <= d(I_M) whenever both exist. An arrival I is handled by
// exactly one of three cases:
//   1. d(I) >= e and w(I) > w(I_M): I replaces the main interval only.
//   2. d(I) <  e: I replaces both the main and the residual; e := d(I).
//   3. otherwise I is discarded.
class RanDPolicy final : public DecisionPolicy {
public:
    RanDPolicy(Half h, RanDProbe* probe) : half_(h), probe_(probe) {}

    Action on_arrival(const Rat& now, std::size_t job, const SimView& view) override {
        roll(now, view);
        const Job& j = view.job(job);
        if (!phase_) {
            phase_ = true;
            ++phase_count_;
            slot_ = 1;
            main_ = job;
            residual_.reset();
            e_ = j.d;
            snap(view);
            return acceptor_is_me() ? Action::start(job) : Action::cont();
        }
        if (j.d < e_) {  // case 2: preempts both halves
            main_ = job;
            residual_ = job;
            e_ = j.d;
            snap(view);
            return view.running() ? Action::abort_start(job) : Action::start(job);
        }
        if (j.w > (main_ ? view.job(*main_).w : Rat(0))) {  // case 1
            main_ = job;
            snap(view);
            if (!acceptor_is_me()) return Action::cont();
            return view.running() ? Action::abort_start(job) : Action::start(job);
        }
        return Action::cont();  // case 3
    }

    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return a_half(half_) ? "ran-d.A" : "ran-d.B"; }

private:
    bool acceptor_is_me() const { return (slot_ % 2 == 1) == a_half(half_); }

    void roll(const Rat& t, const SimView& view) {
        while (phase_ && t >= e_) {
            if (main_ && view.job(*main_).d > e_) {
                ++slot_;
                residual_ = main_;
                main_.reset();
                e_ = view.job(*residual_).d;
                snap(view);
            } else {
                phase_ = false;
                main_.reset();
                residual_.reset();
            }
        }
    }

    void snap(const SimView& view) {
        if (!probe_) return;
        RanDProbe::Snap s;
        s.phase = phase_count_;
        s.slot = slot_;
        s.e = e_;
        if (residual_) s.d_residual = view.job(*residual_).d;
        if (main_) s.d_main = view.job(*main_).d;
        if (s.d_residual && *s.d_residual != e_)
            probe_->violations.push_back("e != d(residual) in slot " + std::to_string(slot_));
        if (s.d_residual && s.d_main && *s.d_main < *s.d_residual)
            probe_->violations.push_back("d(main) < d(residual) in slot " + std::to_string(slot_));
        if (!probe_->snaps.empty()) {
            const auto& prev = probe_->snaps.back();
            if (prev.phase == s.phase && prev.slot == s.slot && s.e > prev.e)
                probe_->violations.push_back("provisional end increased in slot " + std::to_string(slot_));
        }
        probe_->snaps.push_back(std::move(s));
    }

    Half half_;
    RanDProbe* probe_;
    bool phase_ = false;
    long phase_count_ = 0;
    long slot_ = 0;
    Rat e_;
    std::optional<std::size_t> main_, residual_;
};

PolicyPair make_pair_of(std::string name, InstanceClass cls, PolicyFactory a, PolicyFactory b) {
    PolicyPair p;
    p.name = std::move(name);
    p.required_class = cls;
    p.prob_a = Rat(1, 2);
    p.make_a = std::move(a);
    p.make_b = std::move(b);
    return p;
}

}  // namespace

PolicyPair ran_pair() {
    return make_pair_of("ran", InstanceClass::EqualLengthIntervals,
                        [] { return std::make_unique<RanPolicy>(Half::A); },
                        [] { return std::make_unique<RanPolicy>(Half::B); });
}

PolicyPair ran_j_pair() {
    return make_pair_of("ran-j", InstanceClass::EqualLengthJobs,
                        [] { return std::make_unique<RanJPolicy>(Half::A); },
                        [] { return std::make_unique<RanJPolicy>(Half::B); });
}

PolicyPair ran_m_pair() {
    return make_pair_of("ran-m", InstanceClass::Monotone,
                        [] { return std::make_unique<RanMPolicy>(Half::A); },
                        [] { return std::make_unique<RanMPolicy>(Half::B); });
}

PolicyPair ran_c_pair() {
    return make_pair_of("ran-c", InstanceClass::CBenevolent,
                        [] { return std::make_unique<RanCPolicy>(Half::A); },
                        [] { return std::make_unique<RanCPolicy>(Half::B); });
}

PolicyPair ran_d_pair() { return ran_d_pair_probed(nullptr, nullptr); }

PolicyPair ran_d_pair_probed(RanDProbe* probe_a, RanDProbe* probe_b) {
    return make_pair_of("ran-d", InstanceClass::DBenevolent,
                        [probe_a] { return std::make_unique<RanDPolicy>(Half::A, probe_a); },
                        [probe_b] { return std::make_unique<RanDPolicy>(Half::B, probe_b); });
}

std::optional<PolicyPair> pair_by_name(const std::string& name) {
    if (name == "ran") return ran_pair();
    if (name == "ran-m") return ran_m_pair();
    if (name == "ran-c") return ran_c_pair();
    if (name == "ran-d") return ran_d_pair();
    if (name == "ran-j") return ran_j_pair();
    return std::nullopt;
}

}  // namespace sched
