#include "sched/adversary.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <memory>
#include <set>

#include "sched/errors.hpp"
#include "sched/generators.hpp"
#include "sched/offline_opt.hpp"
#include "sched/policies.hpp"

namespace sched {

const char* case_name(CaseTag t) {
    switch (t) {
        case CaseTag::StepOn: return "step-on";
        case CaseTag::StayedOnBoth: return "stayed-on-both";
        case CaseTag::YEarly: return "y-early";
        case CaseTag::AHeavy: return "a-heavy";
        case CaseTag::ABSeparate: return "ab-separate";
        case CaseTag::LargeJ: return "large-j";
        case CaseTag::TooLight: return "too-light";
        case CaseTag::MinOnP: return "min-on-p";
        case CaseTag::MinOnQ: return "min-on-q";
        case CaseTag::BothOnMin: return "both-on-min";
        case CaseTag::StaleMinPair: return "stale-min-pair";
        case CaseTag::OneIdle: return "one-idle";
        case CaseTag::BothIdle: return "both-idle";
        case CaseTag::Degenerate: return "degenerate";
    }
    return "?";
}

namespace {

// ---------------------------------------------------------------------------
// The adaptive adversary.
//
// It releases a bundle of pairwise-overlapping unit intervals, watches which
// two intervals the policy halves hold, and either punishes an exploitable
// configuration with one or two copy-intervals and stops, or releases the
// next, lighter-stepped bundle nested between the deadline of the lighter
// held interval and that of its predecessor, forcing both halves to abort
// again. Alongside it maintains an explicit offline witness (one interval
// per decision) whose value certifies the final ratio.
class LbAdversary final : public AdversarySource {
public:
    LbAdversary(const GameConfig& cfg)
        : delta_(cfg.delta),
          p_(cfg.prob_a),
          q_(Rat(1) - cfg.prob_a),
          v1_(cfg.v1),
          step_cap_(cfg.step_cap),
          release_cap_(cfg.release_cap) {
        c_ = Rat(2) - delta_ / Rat(2);
        eps_ = delta_ / Rat(8);
    }

    std::optional<Release> next(const Observation& obs, const Rat& clock,
                                const std::vector<Job>& released) override;

    // results, valid once the game stopped
    CaseTag terminal() const { return terminal_; }
    int steps_used() const { return int(sets_.size()); }
    std::vector<std::size_t> claim_indices() const;
    const std::vector<Job>& jobs() const { return jobs_; }

private:
    enum class Phase {
        Start,
        AfterSet,
        AHeavyProbe,
        LargeJSet,
        LargeJMainProbe,
        LargeJAHeavyProbe,
        StopNext,
        Done,
    };

    struct SetMeta {
        Rat v, w;
        std::size_t first = 0, count = 0;
    };
    struct JobMeta {
        int set = -1;  // index into sets_, su-marker (-2), or punishment (-1)
        long pos = -1;
    };
    static constexpr int kSuSet = -2;

    struct Resolved {
        enum class K { Idle, Fresh, Stale, Aux } k = K::Idle;
        std::size_t idx = 0;
    };

    const Rat& w_of(std::size_t j) const { return jobs_[j].w; }
    std::size_t pred(std::size_t j) const {
        assert(meta_[j].pos > 0 && j > 0 && meta_[j - 1].set == meta_[j].set);
        return j - 1;
    }
    std::size_t top_of(const SetMeta& s) const { return s.first + s.count - 1; }

    std::optional<std::size_t> running_of(const std::optional<RunningInfo>& ri,
                                          [[maybe_unused]] const std::vector<Job>& released) const {
        if (!ri) return std::nullopt;
        assert(jobs_[ri->job].id == released[ri->job].id);
        if (ri->start != jobs_[ri->job].r) return std::nullopt;  // a late start can never finish
        return ri->job;
    }

    Resolved classify(const std::optional<std::size_t>& j) const {
        if (!j) return {};
        const JobMeta& m = meta_[*j];
        if (m.set == int(sets_.size()) - 1) return {Resolved::K::Fresh, *j};
        if (!chain_.empty() && (*j == chain_.back().first || *j == chain_.back().second))
            return {Resolved::K::Stale, *j};
        return {Resolved::K::Aux, *j};
    }

    Release register_jobs(std::vector<Job> js, int set_tag) {
        released_total_ += js.size();
        if (released_total_ > release_cap_)
            throw SchedError(Err::StepCapExceeded, "release size cap exceeded");
        for (std::size_t i = 0; i < js.size(); ++i) {
            jobs_.push_back(js[i]);
            meta_.push_back({set_tag, long(i)});
        }
        return Release{std::move(js)};
    }

    Release emit_set(const Rat& v, const Rat& w, const Rat& t0, const Rat& span) {
        auto js = build_set(v, w, eps_, t0, span, "s" + std::to_string(sets_.size() + 1) + "-");
        SetMeta meta{v, w, jobs_.size(), js.size()};
        sets_.push_back(meta);
        return register_jobs(std::move(js), int(sets_.size()) - 1);
    }

    Release emit_su(const Rat& w_top, const Rat& lo, const Rat& hi) {
        auto js = build_set(Rat(0), w_top, eps_, lo + (hi - lo) / Rat(4), (hi - lo) / Rat(2), "su-");
        su_ = SetMeta{Rat(0), w_top, jobs_.size(), js.size()};
        return register_jobs(std::move(js), kSuSet);
    }

    Release emit_nested_set(const Rat& v, const Rat& w, std::size_t anchor, const Rat& clock) {
        Rat lo = rat_max(jobs_[pred(anchor)].d, clock);
        Rat hi = jobs_[anchor].d;
        assert(lo < hi);
        return emit_set(v, w, lo + (hi - lo) / Rat(4), (hi - lo) / Rat(2));
    }

    /// One copy-interval of weight w placed at the midpoint of the open
    /// window (max(lo, clock), hi).
    Release emit_single(const Rat& w, const Rat& lo_in, const Rat& hi, const Rat& clock,
                        std::size_t* out_idx = nullptr) {
        Rat lo = rat_max(lo_in, clock);
        if (!(lo < hi)) throw SchedError(Err::UnclassifiableState, "empty punishment window");
        Job j = make_interval("x" + std::to_string(punish_count_++), (lo + hi) / Rat(2), Rat(1), w);
        if (out_idx) *out_idx = jobs_.size();
        return register_jobs({j}, -1);
    }

    Release emit_single_near(const Rat& w, std::size_t target, const Rat& clock,
                             std::size_t* out_idx = nullptr) {
        return emit_single(w, jobs_[pred(target)].d, jobs_[target].d, clock, out_idx);
    }

    std::optional<Release> stop_now(CaseTag tag) {
        terminal_ = tag;
        phase_ = Phase::Done;
        return std::nullopt;
    }

    Release stop_after(CaseTag tag, Release r) {
        terminal_ = tag;
        phase_ = Phase::StopNext;
        return r;
    }

    void claim(std::size_t j) { final_claims_.push_back(j); }

    std::optional<Release> dispatch_step(const Observation& obs, const Rat& clock,
                                         const std::vector<Job>& released);
    std::optional<Release> dispatch_aheavy(const Observation& obs, const Rat& clock,
                                           const std::vector<Job>& released);
    std::optional<Release> dispatch_largej(const Observation& obs, const Rat& clock,
                                           const std::vector<Job>& released);

    // configuration
    Rat delta_, p_, q_, v1_, c_, eps_;
    int step_cap_;
    std::size_t release_cap_;

    // evolving state
    Phase phase_ = Phase::Start;
    std::vector<Job> jobs_;
    std::vector<JobMeta> meta_;
    std::vector<SetMeta> sets_;
    std::optional<SetMeta> su_;
    std::vector<std::pair<std::size_t, std::size_t>> chain_;  // (lighter, heavier) per step
    Rat sum_light_;                                           // sum of chain lighter weights
    std::vector<std::size_t> chain_claims_;                   // predecessor of each chain lighter
    bool drop_last_chain_claim_ = false;
    std::vector<std::size_t> final_claims_;
    CaseTag terminal_ = CaseTag::BothIdle;
    std::size_t released_total_ = 0;
    int punish_count_ = 0;

    // probe bookkeeping
    std::size_t ah_lighter_ = 0, ah_heavier_ = 0, ah_copy_ = 0;
    bool ah_drop_chain_tail_ = false;
    std::size_t lj_J_ = 0, lj_Ip_ = 0, lj_Jq_ = 0, lj_copy_ = 0;
};

std::optional<Release> LbAdversary::next(const Observation& obs, const Rat& clock,
                                         const std::vector<Job>& released) {
    switch (phase_) {
        case Phase::Start: {
            Rat w1 = c_ * (q_ / p_) * (Rat(4) / delta_) * v1_;
            phase_ = Phase::AfterSet;
            return emit_set(v1_, w1, Rat(0), Rat(1, 2));
        }
        case Phase::AfterSet:
            return dispatch_step(obs, clock, released);
        case Phase::AHeavyProbe:
            return dispatch_aheavy(obs, clock, released);
        case Phase::LargeJSet:
            return dispatch_largej(obs, clock, released);
        case Phase::LargeJMainProbe: {
            auto a = running_of(obs.a, released);
            if (a && *a == lj_Ip_) {  // kept the lighter bundle interval: stop
                if (meta_[lj_Ip_].pos > 0) claim(pred(lj_Ip_));
                claim(lj_copy_);
                return stop_now(CaseTag::LargeJ);
            }
            // it moved: bait once more next to the heavier bundle interval
            std::size_t y;
            Release r = emit_single_near(w_of(lj_Jq_), lj_Jq_, clock, &y);
            claim(pred(lj_Jq_));
            claim(y);
            return stop_after(CaseTag::YEarly, std::move(r));
        }
        case Phase::LargeJAHeavyProbe: {
            auto b = running_of(obs.b, released);
            if (b && *b == lj_Jq_) {
                claim(pred(lj_Jq_));
                claim(lj_copy_);
                return stop_now(CaseTag::AHeavy);
            }
            std::size_t y;
            Release r = emit_single_near(w_of(lj_Ip_), lj_Ip_, clock, &y);
            claim(pred(lj_Ip_));
            claim(y);
            return stop_after(CaseTag::AHeavy, std::move(r));
        }
        case Phase::StopNext:
            phase_ = Phase::Done;
            return std::nullopt;
        case Phase::Done:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Release> LbAdversary::dispatch_step(const Observation& obs, const Rat& clock,
                                                  const std::vector<Job>& released) {
    const SetMeta& cur = sets_.back();
    Resolved ra = classify(running_of(obs.a, released));
    Resolved rb = classify(running_of(obs.b, released));
    if (ra.k == Resolved::K::Aux || rb.k == Resolved::K::Aux)
        throw SchedError(Err::UnclassifiableState, "policy holds a live interval outside the recursion");

    const bool a_idle = ra.k == Resolved::K::Idle, b_idle = rb.k == Resolved::K::Idle;

    if (a_idle && b_idle) {
        claim(top_of(cur));
        return stop_now(CaseTag::BothIdle);
    }
    if (a_idle || b_idle) {
        const Resolved& r = a_idle ? rb : ra;
        if (r.k == Resolved::K::Stale) {
            // the engaged half clings to its previous interval
            if (!chain_.empty() && r.idx == chain_.back().second && r.idx != chain_.back().first)
                drop_last_chain_claim_ = true;  // claim its own predecessor instead
            std::size_t x;
            Release rel = emit_single_near(w_of(r.idx), r.idx, clock, &x);
            if (drop_last_chain_claim_) claim(pred(r.idx));
            claim(x);
            return stop_after(CaseTag::OneIdle, std::move(rel));
        }
        if (w_of(r.idx) == cur.v) {  // engaged half sits on the bundle minimum
            claim(top_of(cur));
            return stop_now(CaseTag::OneIdle);
        }
        std::size_t x;
        Release rel = emit_single_near(w_of(r.idx), r.idx, clock, &x);
        claim(pred(r.idx));
        claim(x);
        return stop_after(CaseTag::OneIdle, std::move(rel));
    }

    if (ra.k == Resolved::K::Stale && rb.k == Resolved::K::Stale) {
        // the fresh bundle's top already certifies the ratio
        claim(top_of(cur));
        return stop_now(CaseTag::StayedOnBoth);
    }

    if (ra.k == Resolved::K::Stale) {  // low-prob half stale, high-prob half moved
        assert(!chain_.empty() && ra.idx == chain_.back().first);
        std::size_t f = rb.idx;
        if (w_of(f) == cur.v) {
            claim(top_of(cur));
            return stop_now(CaseTag::StaleMinPair);
        }
        std::size_t x;
        Release rel = emit_single_near(w_of(f), f, clock, &x);
        claim(pred(f));
        claim(x);
        return stop_after(CaseTag::ABSeparate, std::move(rel));
    }

    if (rb.k == Resolved::K::Stale) {  // high-prob half stale on the heavier old interval
        std::size_t t = rb.idx, f = ra.idx;
        if (w_of(f) >= w_of(t)) {
            // the low-probability half holds the heavier interval
            ah_lighter_ = t;
            ah_heavier_ = f;
            ah_drop_chain_tail_ = (t == chain_.back().second && t != chain_.back().first);
            phase_ = Phase::AHeavyProbe;
            return emit_single_near(w_of(f), t, clock, &ah_copy_);
        }
        // fresh-but-lighter started after the stale heavier one
        if (t == chain_.back().second && t != chain_.back().first) drop_last_chain_claim_ = true;
        std::size_t x;
        Release rel = emit_single_near(w_of(t), t, clock, &x);
        if (drop_last_chain_claim_) claim(pred(t));
        claim(x);
        return stop_after(CaseTag::YEarly, std::move(rel));
    }

    // both fresh
    std::size_t x = ra.idx, y = rb.idx;
    if (sets_.size() == 1) {
        const Rat& heavier = rat_max(w_of(x), w_of(y));
        if (c_ * heavier <= cur.w) {  // nobody reached for the heavy tail
            claim(top_of(cur));
            return stop_now(CaseTag::TooLight);
        }
    }
    if (x == y) {
        if (w_of(x) == cur.v) {
            claim(top_of(cur));
            return stop_now(CaseTag::BothOnMin);
        }
        ah_lighter_ = ah_heavier_ = x;
        ah_drop_chain_tail_ = false;
        phase_ = Phase::AHeavyProbe;
        return emit_single_near(w_of(x), x, clock, &ah_copy_);
    }
    std::size_t lighter = w_of(x) < w_of(y) ? x : y;
    std::size_t heavier = lighter == x ? y : x;
    bool lighter_on_p = lighter == x;
    if (w_of(lighter) == cur.v) {
        if (lighter_on_p) {
            // low-prob half banks the minimum; make the high-prob choice a dead end
            std::size_t j;
            Release rel = emit_single_near(w_of(heavier), heavier, clock, &j);
            claim(pred(heavier));
            claim(j);
            return stop_after(CaseTag::MinOnP, std::move(rel));
        }
        // high-prob half banks the minimum: stopping right away already wins
        claim(top_of(cur));
        return stop_now(CaseTag::MinOnQ);
    }
    if (!lighter_on_p) {  // low-prob half took the heavier interval
        ah_lighter_ = lighter;
        ah_heavier_ = heavier;
        ah_drop_chain_tail_ = false;
        phase_ = Phase::AHeavyProbe;
        return emit_single_near(w_of(heavier), lighter, clock, &ah_copy_);
    }
    if (w_of(heavier) >= Rat(2) * w_of(lighter)) {
        // letting the low-prob half finish its light interval is affordable
        Rat u = large_j_u(p_, delta_);
        lj_J_ = heavier;
        claim(pred(heavier));
        phase_ = Phase::LargeJSet;
        Rat lo = rat_max(jobs_[pred(heavier)].d, clock);
        return emit_su(u * w_of(heavier), lo, jobs_[heavier].d);
    }

    // recurse: nest the next bundle between the lighter interval's
    // predecessor deadline and its own deadline
    assert(chain_.empty() || w_of(lighter) > w_of(chain_.back().first));
    chain_.push_back({lighter, heavier});
    sum_light_ += w_of(lighter);
    chain_claims_.push_back(pred(lighter));
    Rat v_next = w_of(lighter);
    Rat w_next = rat_max(c_ * (p_ * w_of(lighter) + q_ * w_of(heavier)) - sum_light_, v_next);
    eps_ /= Rat(2);
    if (w_next == v_next) {
        // the recursion bottoms out: one interval matching the lighter weight
        Rat lo = rat_max(jobs_[pred(lighter)].d, clock);
        std::size_t j;
        Release rel = emit_single(v_next, lo, jobs_[lighter].d, clock, &j);
        claim(j);
        return stop_after(CaseTag::Degenerate, std::move(rel));
    }
    if (int(sets_.size()) + 1 > step_cap_)
        throw SchedError(Err::StepCapExceeded, "step cap " + std::to_string(step_cap_));
    return emit_nested_set(v_next, w_next, lighter, clock);
}

std::optional<Release> LbAdversary::dispatch_aheavy(const Observation& obs, const Rat& clock,
                                                    const std::vector<Job>& released) {
    auto b = running_of(obs.b, released);
    if (b && *b == ah_lighter_) {
        // high-prob half kept the lighter interval
        if (ah_drop_chain_tail_) drop_last_chain_claim_ = true;
        claim(pred(ah_lighter_));
        claim(ah_copy_);
        return stop_now(CaseTag::AHeavy);
    }
    // it let go: one more copy next to the heavier interval ends the game
    std::size_t y;
    Release rel = emit_single_near(w_of(ah_heavier_), ah_heavier_, clock, &y);
    claim(pred(ah_heavier_));
    claim(y);
    return stop_after(CaseTag::AHeavy, std::move(rel));
}

std::optional<Release> LbAdversary::dispatch_largej(const Observation& obs, const Rat& clock,
                                                    const std::vector<Job>& released) {
    auto b = running_of(obs.b, released);
    auto in_su = [&](std::size_t j) { return meta_[j].set == kSuSet; };
    if (!b || *b == lj_J_) {
        // high-prob half kept (or wasted) its heavy interval
        claim(top_of(*su_));
        return stop_now(CaseTag::LargeJ);
    }
    if (!in_su(*b)) throw SchedError(Err::UnclassifiableState, "unexpected interval after the zero bundle");
    std::size_t jq = *b;
    auto a = running_of(obs.a, released);
    if (!a) {
        if (w_of(jq).is_zero()) {
            claim(top_of(*su_));
            return stop_now(CaseTag::LargeJ);
        }
        std::size_t j2;
        Release rel = emit_single_near(w_of(jq), jq, clock, &j2);
        claim(pred(jq));
        claim(j2);
        return stop_after(CaseTag::LargeJ, std::move(rel));
    }
    if (!in_su(*a)) throw SchedError(Err::UnclassifiableState, "unexpected interval after the zero bundle");
    std::size_t ip = *a;
    if (w_of(ip) > w_of(jq)) {
        if (w_of(jq).is_zero()) {
            // high-prob half wastes itself on the zero interval
            std::size_t x;
            Release rel = emit_single_near(w_of(ip), ip, clock, &x);
            claim(pred(ip));
            claim(x);
            return stop_after(CaseTag::AHeavy, std::move(rel));
        }
        lj_Ip_ = ip;
        lj_Jq_ = jq;
        phase_ = Phase::LargeJAHeavyProbe;
        return emit_single_near(w_of(ip), jq, clock, &lj_copy_);
    }
    if (ip == jq && w_of(ip).is_zero()) {
        claim(top_of(*su_));
        return stop_now(CaseTag::LargeJ);
    }
    lj_Ip_ = ip;
    lj_Jq_ = jq;
    phase_ = Phase::LargeJMainProbe;
    Rat lo = meta_[ip].pos > 0 ? jobs_[pred(ip)].d : clock;
    return emit_single(w_of(jq), lo, jobs_[ip].d, clock, &lj_copy_);
}

std::vector<std::size_t> LbAdversary::claim_indices() const {
    std::vector<std::size_t> out = chain_claims_;
    if (drop_last_chain_claim_ && !out.empty()) out.pop_back();
    out.insert(out.end(), final_claims_.begin(), final_claims_.end());
    return out;
}

// ---------------------------------------------------------------------------
// Adversarial test policies

class GreedyPolicy final : public DecisionPolicy {
public:
    Action on_arrival(const Rat&, std::size_t job, const SimView& view) override {
        const auto& run = view.running();
        if (!run) return Action::start(job);
        if (view.job(job).w > view.job(run->job).w) return Action::abort_start(job);
        return Action::cont();
    }
    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return "greedy"; }
};

class KeepFirstPolicy final : public DecisionPolicy {
public:
    Action on_arrival(const Rat&, std::size_t job, const SimView& view) override {
        return view.running() ? Action::cont() : Action::start(job);
    }
    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return "keep-first"; }
};

/// Greedy, except every k-th improving offer is ignored.
class AlmostGreedyPolicy final : public DecisionPolicy {
public:
    explicit AlmostGreedyPolicy(int k) : k_(k) {}
    Action on_arrival(const Rat&, std::size_t job, const SimView& view) override {
        const auto& run = view.running();
        if (!run) return Action::start(job);
        if (view.job(job).w > view.job(run->job).w) {
            if (++offers_ % k_ == 0) return Action::cont();
            return Action::abort_start(job);
        }
        return Action::cont();
    }
    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return "almost-greedy-" + std::to_string(k_); }

private:
    int k_;
    long offers_ = 0;
};

/// Greedy below an absolute weight cap; deaf above it.
class CappedPolicy final : public DecisionPolicy {
public:
    explicit CappedPolicy(Rat cap) : cap_(std::move(cap)) {}
    Action on_arrival(const Rat&, std::size_t job, const SimView& view) override {
        if (view.job(job).w > cap_) return Action::cont();
        const auto& run = view.running();
        if (!run) return Action::start(job);
        if (view.job(job).w > view.job(run->job).w) return Action::abort_start(job);
        return Action::cont();
    }
    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return "capped"; }

private:
    Rat cap_;
};

class NeverPolicy final : public DecisionPolicy {
public:
    Action on_arrival(const Rat&, std::size_t, const SimView&) override { return Action::cont(); }
    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return "never"; }
};

/// Scripted policy: arrivals separated by more than 1/4 open a new "burst",
/// and the policy plays greedy under caps[burst] within each burst (cap 0 =
/// deaf). If the opening arrival of a burst fits the cap, the policy drops
/// whatever it is running for it. Used to steer the game into chosen branches.
class BurstPolicy final : public DecisionPolicy {
public:
    explicit BurstPolicy(std::vector<Rat> caps) : caps_(std::move(caps)) {}

    Action on_arrival(const Rat& now, std::size_t job, const SimView& view) override {
        bool fresh_burst = !last_ || now - *last_ > Rat(1, 4);
        if (fresh_burst) ++burst_;
        last_ = now;
        Rat cap = burst_ >= 0 && burst_ < long(caps_.size()) ? caps_[std::size_t(burst_)] : Rat(0);
        if (cap.is_zero() || view.job(job).w > cap) return Action::cont();
        const auto& run = view.running();
        if (!run) return Action::start(job);
        if (fresh_burst) return Action::abort_start(job);
        if (view.job(job).w > view.job(run->job).w) return Action::abort_start(job);
        return Action::cont();
    }
    Action on_wakeup(const Rat&, const SimView&) override { return Action::cont(); }
    std::optional<Rat> next_wakeup(const Rat&, const SimView&) override { return std::nullopt; }
    std::string name() const override { return "burst-hopper"; }

private:
    std::vector<Rat> caps_;
    long burst_ = -1;
    std::optional<Rat> last_;
};

PolicyFactory burst(std::vector<Rat> caps) {
    return [caps] { return std::make_unique<BurstPolicy>(caps); };
}

PolicyPair zoo(std::string name, Rat prob_a, PolicyFactory a, PolicyFactory b) {
    PolicyPair p;
    p.name = std::move(name);
    p.required_class = std::nullopt;
    p.prob_a = std::move(prob_a);
    p.make_a = std::move(a);
    p.make_b = std::move(b);
    return p;
}

}  // namespace

PolicyPair zoo_pair_greedy_keepfirst() {
    return zoo("greedy+keep-first", Rat(1, 2), [] { return std::make_unique<GreedyPolicy>(); },
               [] { return std::make_unique<KeepFirstPolicy>(); });
}
PolicyPair zoo_pair_almostgreedy_greedy() {
    return zoo("almost-greedy+greedy", Rat(1, 2), [] { return std::make_unique<AlmostGreedyPolicy>(2); },
               [] { return std::make_unique<GreedyPolicy>(); });
}
PolicyPair zoo_pair_keepfirst_greedy_q() {
    return zoo("keep-first+greedy", Rat(1, 4), [] { return std::make_unique<KeepFirstPolicy>(); },
               [] { return std::make_unique<GreedyPolicy>(); });
}
PolicyPair zoo_pair_greedy_almostgreedy() {
    return zoo("greedy+almost-greedy", Rat(1, 3), [] { return std::make_unique<GreedyPolicy>(); },
               [] { return std::make_unique<AlmostGreedyPolicy>(3); });
}
PolicyPair zoo_pair_capped_greedy() {
    return zoo("capped+greedy", Rat(1, 2), [] { return std::make_unique<CappedPolicy>(Rat(3)); },
               [] { return std::make_unique<GreedyPolicy>(); });
}
PolicyPair zoo_pair_greedy_never() {
    return zoo("greedy+never", Rat(1, 2), [] { return std::make_unique<GreedyPolicy>(); },
               [] { return std::make_unique<NeverPolicy>(); });
}
PolicyPair zoo_pair_never_never() {
    return zoo("never+never", Rat(1, 2), [] { return std::make_unique<NeverPolicy>(); },
               [] { return std::make_unique<NeverPolicy>(); });
}

Rat large_j_u(const Rat& p, const Rat& delta) {
    Rat den = Rat(1) - Rat(2) * p + p * delta / Rat(2);
    if (den.sign() <= 0) throw SchedError(Err::DegenerateU, "u undefined for this probability");
    return (Rat(1) - p + p * delta / Rat(4)) / den;
}

std::vector<PolicyPair> zoo_pairs() {
    const Rat big(1000000);
    std::vector<PolicyPair> out = {
        zoo_pair_greedy_keepfirst(), zoo_pair_almostgreedy_greedy(),
        zoo_pair_keepfirst_greedy_q(), zoo_pair_greedy_almostgreedy(),
        zoo_pair_capped_greedy(),      zoo_pair_greedy_never(),
        zoo_pair_never_never(),
    };
    // scripted burst hoppers steering the game into specific branches
    out.push_back(zoo("hop:mid-then-lag", Rat(1, 2), burst({Rat(8), Rat(9)}), burst({big, Rat(0)})));
    out.push_back(zoo("hop:freeze-vs-min", Rat(1, 2), burst({Rat(8), Rat(0)}), burst({big, Rat(8)})));
    out.push_back(zoo("hop:both-on-min", Rat(1, 2), burst({Rat(8), Rat(8)}), burst({big, Rat(8)})));
    out.push_back(zoo("hop:keep-heavy", Rat(1, 2),
                      [] { return std::make_unique<CappedPolicy>(Rat(3)); }, burst({big, Rat(0)})));
    out.push_back(zoo("hop:gap-then-mid", Rat(1, 2), burst({Rat(7), big}), burst({big, Rat(20)})));
    out.push_back(zoo("hop:gap-then-chase", Rat(1, 2), burst({Rat(7), big}), burst({big, Rat(20), big})));
    out.push_back(zoo("hop:both-freeze", Rat(1, 2), burst({Rat(8), Rat(0)}), burst({big, Rat(0)})));
    out.push_back(zoo("hop:too-light", Rat(1, 2),
                      [] { return std::make_unique<CappedPolicy>(Rat(2)); },
                      [] { return std::make_unique<CappedPolicy>(Rat(2)); }));
    out.push_back(zoo("hop:split-sets", Rat(1, 2), burst({Rat(8), Rat(0)}), burst({big, big})));
    out.push_back(zoo("hop:copy-chaser", Rat(1, 2), burst({big}), burst({Rat(10), big})));
    out.push_back(zoo("hop:drop-mid", Rat(1, 2), burst({Rat(7), Rat(12), big}), burst({big, big})));
    return out;
}

std::optional<PolicyPair> adversary_pair_by_name(const std::string& name) {
    if (name == "ran") return ran_pair();
    for (auto& p : zoo_pairs())
        if (p.name == name) return p;
    return std::nullopt;
}

GameOutcome lower_bound_game(const PolicyPair& pair_in, const GameConfig& cfg_in) {
    GameConfig cfg = cfg_in;
    if (!(cfg.delta.sign() > 0 && cfg.delta < Rat(1)))
        throw SchedError(Err::BadParams, "delta must lie in (0, 1)");
    if (!(cfg.prob_a.sign() > 0 && cfg.prob_a < Rat(1)))
        throw SchedError(Err::BadParams, "prob_a must lie in (0, 1)");
    if (cfg.v1 < Rat(1)) throw SchedError(Err::BadParams, "v1 must be at least 1");
    if (const char* env = std::getenv("SCHED_STEP_CAP")) cfg.step_cap = std::atoi(env);
    if (cfg.step_cap < 1) throw SchedError(Err::BadParams, "step cap must be positive");

    PolicyPair pair = pair_in;
    pair.prob_a = cfg.prob_a;
    bool relabeled = false;
    if (cfg.prob_a > Rat(1, 2)) {
        std::swap(pair.make_a, pair.make_b);
        cfg.prob_a = Rat(1) - cfg.prob_a;
        pair.prob_a = cfg.prob_a;
        relabeled = true;
    }

    LbAdversary adv(cfg);
    AdaptiveResult res = run_adaptive(adv, pair);

    GameOutcome out;
    out.instance = std::move(res.instance);
    out.val_a = res.val_a;
    out.val_b = res.val_b;
    out.expected = res.expected;
    out.released_count = res.released_count;
    out.relabeled = relabeled;
    out.steps_used = adv.steps_used();
    out.terminal_case = adv.terminal();

    // the explicit witness must be a feasible schedule of released intervals
    std::vector<std::size_t> claim = adv.claim_indices();
    std::vector<Job> witness;
    for (std::size_t idx : claim) witness.push_back(adv.jobs()[idx]);
    std::sort(witness.begin(), witness.end(), [](const Job& x, const Job& y) { return x.r < y.r; });
    out.opt_claimed = 0;
    for (std::size_t i = 0; i < witness.size(); ++i) {
        out.opt_claimed += witness[i].w;
        out.claim_ids.push_back(witness[i].id);
        if (i > 0 && witness[i - 1].d > witness[i].r)
            throw std::logic_error("adversary claim witness overlaps");
    }

    out.opt_dp = opt_intervals(out.instance).value;
    if (out.opt_dp < out.opt_claimed) throw std::logic_error("exact optimum below the claimed witness");

    if (out.expected.is_zero()) {
        out.ratio_infinite = true;
        out.ratio = 0;
    } else {
        out.ratio = out.opt_dp / out.expected;
    }
    return out;
}

}  // namespace sched
