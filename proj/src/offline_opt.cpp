#include "sched/offline_opt.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "sched/errors.hpp"

namespace sched {

namespace {

Trace witness_from(const std::vector<std::pair<Rat, std::size_t>>& starts, const Instance& inst) {
    Trace t;
    auto sorted = starts;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    t.value = 0;
    for (const auto& [s, j] : sorted) {
        t.events.push_back({s, EventKind::Start, j});
        t.events.push_back({s + inst.jobs[j].p, EventKind::Complete, j});
        t.value += inst.jobs[j].w;
    }
    // completions precede starts at equal times (back-to-back schedules)
    std::sort(t.events.begin(), t.events.end(), [](const TraceEvent& a, const TraceEvent& b) {
        if (a.t != b.t) return a.t < b.t;
        return int(a.kind) > int(b.kind);
    });
    return t;
}

}  // namespace

OptResult opt_intervals(const Instance& inst) {
    if (!inst.all_intervals()) throw SchedError(Err::NotIntervals, "opt_intervals");
    const std::size_t n = inst.jobs.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const Job &a = inst.jobs[x], &b = inst.jobs[y];
        if (a.d != b.d) return a.d < b.d;
        if (a.r != b.r) return a.r < b.r;
        return a.id < b.id;
    });

    // best[k]: optimum over the first k intervals in deadline order
    std::vector<Rat> best(n + 1);
    std::vector<int> take(n + 1, 0);
    std::vector<std::size_t> pred(n + 1, 0);
    best[0] = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const Job& j = inst.jobs[order[k - 1]];
        // rightmost q with d(order[q-1]) <= r(j): binary search on deadlines
        std::size_t lo = 0, hi = k - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (inst.jobs[order[mid - 1]].d <= j.r)
                lo = mid;
            else
                hi = mid - 1;
        }
        Rat with = best[lo] + j.w;
        if (with > best[k - 1]) {
            best[k] = with;
            take[k] = 1;
            pred[k] = lo;
        } else {
            best[k] = best[k - 1];
        }
    }

    std::vector<std::pair<Rat, std::size_t>> starts;
    for (std::size_t k = n; k > 0;) {
        if (take[k]) {
            std::size_t idx = order[k - 1];
            starts.emplace_back(inst.jobs[idx].r, idx);
            k = pred[k];
        } else {
            --k;
        }
    }
    OptResult res;
    res.value = best[n];
    res.witness = witness_from(starts, inst);
    assert(res.witness.value == res.value);
    return res;
}

Rat brute_force_intervals(const Instance& inst, std::size_t cap) {
    if (!inst.all_intervals()) throw SchedError(Err::NotIntervals, "brute_force_intervals");
    const std::size_t n = inst.jobs.size();
    if (n > cap) throw SchedError(Err::TooLarge, "brute_force_intervals");
    auto compatible = [&](std::size_t x, std::size_t y) {
        return inst.jobs[x].d <= inst.jobs[y].r || inst.jobs[y].d <= inst.jobs[x].r;
    };
    Rat best = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Rat v = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            for (std::size_t k = i + 1; k < n && ok; ++k)
                if ((mask >> k & 1) && !compatible(i, k)) ok = false;
            v += inst.jobs[i].w;
        }
        if (ok && v > best) best = v;
    }
    return best;
}

namespace {

struct JobsDp {
    const Instance& inst;
    std::vector<Rat> grid;  // sorted candidate time points
    // memo key: t_index * 2^n + mask  (t_index 0 reserved for "before all")
    std::unordered_map<std::uint64_t, std::pair<Rat, std::uint32_t>> memo;
    // choice packing: job index (8 bits) + 1, next t_index (24 bits); 0 = stop

    std::size_t t_index(const Rat& t) const {
        auto it = std::lower_bound(grid.begin(), grid.end(), t);
        assert(it != grid.end() && *it == t);
        return std::size_t(it - grid.begin()) + 1;
    }

    const Rat& t_of(std::size_t idx) const { return grid[idx - 1]; }

    Rat solve(std::size_t t_idx, std::uint32_t mask) {
        std::uint64_t key = (std::uint64_t(t_idx) << inst.jobs.size()) | mask;
        if (auto it = memo.find(key); it != memo.end()) return it->second.first;
        Rat best = 0;
        std::uint32_t choice = 0;
        for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
            if (!(mask >> j & 1)) continue;
            Rat start = inst.jobs[j].r;
            if (t_idx > 0 && t_of(t_idx) > start) start = t_of(t_idx);
            if (start + 1 > inst.jobs[j].d) continue;
            std::size_t nt = t_index(start + 1);
            Rat v = inst.jobs[j].w + solve(nt, mask & ~(std::uint32_t(1) << j));
            if (v > best) {
                best = v;
                choice = std::uint32_t(((j + 1) << 24) | nt);
            }
        }
        memo.emplace(key, std::make_pair(best, choice));
        return best;
    }
};

}  // namespace

OptResult opt_equal_jobs(const Instance& inst, std::size_t cap) {
    if (inst.cls != InstanceClass::EqualLengthJobs)
        throw SchedError(Err::ClassMismatch, "opt_equal_jobs needs equal-length-jobs");
    const std::size_t n = inst.jobs.size();
    if (n > cap) throw SchedError(Err::TooLarge, "opt_equal_jobs cap " + std::to_string(cap));
    for (const Job& j : inst.jobs)
        if (j.p != Rat(1)) throw SchedError(Err::ClassMismatch, "jobs must have unit length");

    JobsDp dp{inst, {}, {}};
    for (const Job& j : inst.jobs)
        for (std::size_t k = 0; k <= n; ++k) dp.grid.push_back(j.r + Rat(long(k)));
    std::sort(dp.grid.begin(), dp.grid.end());
    dp.grid.erase(std::unique(dp.grid.begin(), dp.grid.end()), dp.grid.end());

    std::uint32_t full = n == 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << n) - 1;
    OptResult res;
    res.value = dp.solve(0, full);

    // walk the recorded choices to rebuild the witness
    std::vector<std::pair<Rat, std::size_t>> starts;
    std::size_t t_idx = 0;
    std::uint32_t mask = full;
    for (;;) {
        std::uint64_t key = (std::uint64_t(t_idx) << n) | mask;
        auto choice = dp.memo.at(key).second;
        if (choice == 0) break;
        std::size_t j = (choice >> 24) - 1;
        std::size_t nt = choice & 0xffffff;
        starts.emplace_back(dp.t_of(nt) - 1, j);
        t_idx = nt;
        mask &= ~(std::uint32_t(1) << j);
    }
    res.witness = witness_from(starts, inst);
    assert(res.witness.value == res.value);
    return res;
}

namespace {

void brute_jobs_rec(const Instance& inst, std::uint32_t used, const Rat& t, const Rat& acc, Rat& best) {
    if (acc > best) best = acc;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        if (used >> j & 1) continue;
        Rat start = rat_max(t, inst.jobs[j].r);
        if (start + 1 > inst.jobs[j].d) continue;
        brute_jobs_rec(inst, used | (std::uint32_t(1) << j), start + 1, acc + inst.jobs[j].w, best);
    }
}

}  // namespace

Rat brute_force_jobs(const Instance& inst, std::size_t cap) {
    const std::size_t n = inst.jobs.size();
    if (n > cap) throw SchedError(Err::TooLarge, "brute_force_jobs cap " + std::to_string(cap));
    for (const Job& j : inst.jobs)
        if (j.p != Rat(1)) throw SchedError(Err::ClassMismatch, "jobs must have unit length");
    Rat best = 0;
    brute_jobs_rec(inst, 0, Rat(0), Rat(0), best);
    return best;
}

}  // namespace sched
