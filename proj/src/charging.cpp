#include "sched/charging.hpp"

#include <algorithm>
#include <set>

#include "sched/errors.hpp"

namespace sched {

namespace {

bool odd(long s) { return s % 2 == 1; }

long slot_span(const Instance& inst) {
    Rat latest = 0;
    for (const Job& j : inst.jobs) latest = rat_max(latest, j.d);
    return latest.floor_long() + 2;
}

std::map<std::size_t, long> invert(const std::map<long, std::size_t>& m) {
    std::map<std::size_t, long> inv;
    for (auto [s, j] : m) inv[j] = s;
    return inv;
}

}  // namespace

const SlotCharges& ChargeLedger::at(long s) const {
    static const SlotCharges empty;
    auto it = charges.find(s);
    return it == charges.end() ? empty : it->second;
}

std::optional<std::size_t> ChargeLedger::accepted_in(long s) const {
    const auto& m = odd(s) ? a_accept : b_accept;
    auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

Rat ChargeLedger::total_charged() const {
    Rat t = 0;
    for (const auto& [s, c] : charges) t += c.charged_weight();
    return t;
}

ChargeLedger compute_charges(const Trace& opt_trace, const Trace& a_trace, const Trace& b_trace,
                             const Instance& inst) {
    for (const Job& j : inst.jobs)
        if (j.p != Rat(1)) throw SchedError(Err::InstanceMismatch, "charging needs unit-length jobs");

    ChargeLedger led;
    led.inst = &inst;
    led.slot_count = slot_span(inst);
    auto slots = unit_slots(std::size_t(led.slot_count));
    auto accept_of = [&](const Trace& t) { return accepted_per_slot(t, slots); };

    auto to_long = [](const std::map<std::size_t, std::size_t>& m) {
        std::map<long, std::size_t> out;
        for (auto [s, j] : m) out[long(s) + 1] = j;  // slots are 1-based
        return out;
    };
    led.a_accept = to_long(accept_of(a_trace));
    led.b_accept = to_long(accept_of(b_trace));
    led.opt_accept = to_long(accept_of(opt_trace));
    led.a_inv = invert(led.a_accept);
    led.b_inv = invert(led.b_accept);
    led.opt_inv = invert(led.opt_accept);

    // the two halves only accept in their own parity
    for (auto [s, j] : led.a_accept)
        if (!odd(s)) led.violations.push_back("A-half acceptance in even slot " + std::to_string(s));
    for (auto [s, j] : led.b_accept)
        if (odd(s)) led.violations.push_back("B-half acceptance in odd slot " + std::to_string(s));

    auto weight = [&](std::size_t j) { return inst.jobs[j].w; };

    for (auto [s, j] : led.opt_accept) {
        const auto& same_accept = odd(s) ? led.a_accept : led.b_accept;
        const auto& same_inv = odd(s) ? led.a_inv : led.b_inv;
        const auto& other_inv = odd(s) ? led.b_inv : led.a_inv;
        const auto& other_accept = odd(s) ? led.b_accept : led.a_accept;

        auto same_here = same_accept.find(s);
        if (same_here != same_accept.end() && weight(same_here->second) >= weight(j)) {
            auto& c = led.charges[s].downward;
            if (c) led.violations.push_back("second downward charge at slot " + std::to_string(s));
            c = Charge{weight(j), j, s};
            continue;
        }
        // the same-parity half must have accepted j itself, earlier
        auto self_slot = same_inv.find(j);
        if (self_slot == same_inv.end() || self_slot->second >= s) {
            led.violations.push_back("offline job '" + inst.jobs[j].id +
                                     "' neither dominated nor accepted earlier by the same half");
            continue;
        }
        {
            auto& c = led.charges[self_slot->second].self;
            if (c) led.violations.push_back("second self charge at slot " + std::to_string(self_slot->second));
            c = Charge{weight(j) / Rat(2), j, s};
        }
        // other half: self charge if it accepted j before s, else backward
        auto other_slot = other_inv.find(j);
        if (other_slot != other_inv.end() && other_slot->second < s) {
            auto& c = led.charges[other_slot->second].self;
            if (c) led.violations.push_back("second self charge at slot " + std::to_string(other_slot->second));
            c = Charge{weight(j) / Rat(2), j, s};
        } else {
            auto prev = other_accept.find(s - 1);
            if (prev == other_accept.end() || weight(prev->second) < weight(j))
                led.violations.push_back("backward charge unsupported at slot " + std::to_string(s - 1));
            auto& c = led.charges[s - 1].backward;
            if (c) led.violations.push_back("second backward charge at slot " + std::to_string(s - 1));
            c = Charge{weight(j) / Rat(2), j, s};
        }
    }

    // every charge lands on a slot whose accepted job is at least as heavy
    for (const auto& [s, c] : led.charges) {
        auto acc = led.accepted_in(s);
        if (!acc) {
            led.violations.push_back("charge on slot " + std::to_string(s) + " with no acceptance");
            continue;
        }
        if (c.downward && weight(*acc) < c.downward->weight)
            led.violations.push_back("downward charge heavier than acceptance at " + std::to_string(s));
        if (c.self && weight(*acc) < Rat(2) * c.self->weight)
            led.violations.push_back("self charge heavier than acceptance at " + std::to_string(s));
        if (c.backward && weight(*acc) < Rat(2) * c.backward->weight)
            led.violations.push_back("backward charge heavier than acceptance at " + std::to_string(s));
    }
    return led;
}

SlotClassification classify_slots(const ChargeLedger& ledger) {
    SlotClassification out;
    for (const auto& [s, c] : ledger.charges) {
        int hu = c.half_units();
        SlotKind k = hu <= 2 ? SlotKind::Good : hu == 3 ? SlotKind::Mid : SlotKind::Bad;
        out.kind[s] = k;
        if (k == SlotKind::Bad) {
            auto acc = ledger.accepted_in(s);
            // a bad slot holds a downward+self+backward trio; the backward
            // charge names the offline job of the following slot
            if (!acc || !c.backward) continue;
            out.bad[s] = SlotClassification::BadInfo{*acc, c.backward->from_job};
        }
    }
    return out;
}

std::map<long, long> pair_bad_slots(const ChargeLedger& ledger, const SlotClassification& cls) {
    std::map<long, long> pairing;
    std::set<long> used_good;

    auto weight = [&](std::size_t j) { return ledger.inst->jobs[j].w; };

    for (const auto& [bad_slot, info] : cls.bad) {
        bool bad_odd = odd(bad_slot);
        // chain slots belong to the other half; "mine" is the bad slot's half
        const auto& other_inv = bad_odd ? ledger.b_inv : ledger.a_inv;
        const auto& other_accept = bad_odd ? ledger.b_accept : ledger.a_accept;
        const auto& mine_accept = bad_odd ? ledger.a_accept : ledger.b_accept;

        auto require = [&](bool cond, const std::string& what) {
            if (!cond) throw SchedError(Err::PairingFailure,
                                        what + " (bad slot " + std::to_string(bad_slot) + ")");
        };

        Rat wy = weight(info.y_job);
        auto sx = other_inv.find(info.x_job);
        auto sy = other_inv.find(info.y_job);
        require(sx != other_inv.end() && sx->second < bad_slot, "X not accepted earlier by the other half");
        require(sy != other_inv.end() && sy->second < bad_slot, "Y not accepted earlier by the other half");

        std::set<long> chain = {sx->second, sy->second};
        long special = std::max(sx->second, sy->second);
        std::optional<long> good;
        for (std::size_t guard = 0; guard <= std::size_t(ledger.slot_count) + 2; ++guard) {
            // the special slot's acceptance is heavy enough by construction
            auto ystar = other_accept.find(special);
            require(ystar != other_accept.end(), "special slot has no acceptance");
            require(weight(ystar->second) >= wy, "special slot acceptance lighter than w(Y)");
            if (ledger.at(special).half_units() <= 2) {
                good = special;  // at most 1 unit of charge
                break;
            }
            require(ledger.at(special).downward.has_value(),
                    "special slot with >1 unit but no downward charge");
            auto z_here = mine_accept.find(special - 1);
            require(z_here != mine_accept.end(), "no acceptance right before the special slot");
            std::size_t z = z_here->second;
            require(weight(z) >= wy, "acceptance before the special slot lighter than w(Y)");
            const SlotCharges& prev = ledger.at(special - 1);
            require(!prev.backward.has_value(), "backward charge right before a downward-charged slot");
            if (!prev.self.has_value()) {
                good = special - 1;  // no self charge either: at most one unit
                break;
            }
            // Z itself is completed offline later; follow its acceptance in
            // the other half to extend the chain
            require(prev.self->from_job == z, "self charge before the special slot not for Z");
            long z_opt_slot = prev.self->from_slot;
            require(z_opt_slot > special, "offline completion of Z not after the special slot");
            auto sz = other_inv.find(z);
            require(sz != other_inv.end(), "Z not accepted by the other half");
            require(sz->second < std::min(bad_slot, z_opt_slot), "Z accepted too late by the other half");
            require(!chain.count(sz->second), "chain revisited a slot");
            chain.insert(sz->second);
            special = std::max(*chain.begin(), sz->second);
        }
        require(good.has_value(), "special-slot search did not terminate");
        if (used_good.count(*good))
            throw SchedError(Err::PairingFailure,
                             "good slot " + std::to_string(*good) + " paired twice");
        used_good.insert(*good);
        pairing[bad_slot] = *good;
    }
    return pairing;
}

ChargingReport verify_ratio(const ChargeLedger& ledger, const SlotClassification& cls,
                            const std::map<long, long>& pairing) {
    ChargingReport rep;
    const Instance& inst = *ledger.inst;
    auto weight = [&](std::size_t j) { return inst.jobs[j].w; };

    for (const auto& v : ledger.violations) rep.fail("ledger: " + v);

    // conservation: everything the offline schedule completed was charged
    Rat opt_value = 0;
    for (auto [s, j] : ledger.opt_accept) opt_value += weight(j);
    rep.opt_value = opt_value;
    if (ledger.total_charged() != opt_value) rep.fail("charged weight != offline value");

    Rat ab = 0;
    for (auto [s, j] : ledger.a_accept) ab += weight(j);
    for (auto [s, j] : ledger.b_accept) ab += weight(j);
    rep.ab_value = ab;

    const Rat three_halves(3, 2);
    std::set<long> in_pair;
    for (auto [bad, good] : pairing) {
        in_pair.insert(bad);
        in_pair.insert(good);
        auto acc_bad = ledger.accepted_in(bad), acc_good = ledger.accepted_in(good);
        if (!acc_bad || !acc_good) {
            rep.fail("paired slot without acceptance");
            continue;
        }
        Rat charged = ledger.at(bad).charged_weight() + ledger.at(good).charged_weight();
        Rat accepted = weight(*acc_bad) + weight(*acc_good);
        if (charged > three_halves * accepted)
            rep.fail("pair (" + std::to_string(bad) + "," + std::to_string(good) + ") exceeds 1.5x");
    }
    for (const auto& [s, c] : ledger.charges) {
        if (c.half_units() > 4) rep.fail("slot " + std::to_string(s) + " over 2 units");
        if (c.half_units() == 4 && !c.backward) rep.fail("bad slot without backward charge");
        if (in_pair.count(s)) continue;
        auto acc = ledger.accepted_in(s);
        if (!acc) continue;  // already reported by compute_charges
        if (cls.kind.count(s) && cls.kind.at(s) == SlotKind::Bad)
            rep.fail("unpaired bad slot " + std::to_string(s));
        if (c.charged_weight() > three_halves * weight(*acc))
            rep.fail("slot " + std::to_string(s) + " exceeds 1.5x its acceptance");
    }

    if (Rat(2) * opt_value > Rat(3) * ab) rep.fail("aggregate bound violated");
    return rep;
}

}  // namespace sched
