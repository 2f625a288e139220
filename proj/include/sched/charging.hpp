#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sched/model.hpp"

namespace sched {

/// One charge received by a slot. Units: a downward charge counts 2
/// half-units and carries the full weight of the offline job; self and
/// backward charges count 1 half-unit and carry half the weight.
struct Charge {
    Rat weight;            // weight actually charged to the slot
    std::size_t from_job;  // offline job generating the charge
    long from_slot;        // slot where the offline schedule accepted it
};

struct SlotCharges {
    std::optional<Charge> downward, self, backward;
    int half_units() const {
        return (downward ? 2 : 0) + (self ? 1 : 0) + (backward ? 1 : 0);
    }
    Rat charged_weight() const {
        Rat t = 0;
        if (downward) t += downward->weight;
        if (self) t += self->weight;
        if (backward) t += backward->weight;
        return t;
    }
};

/// Full charge bookkeeping over unit slots 1..slot_count: per-slot charges
/// plus the accepted-job maps of the two online halves and of the offline
/// schedule, with inverses.
struct ChargeLedger {
    const Instance* inst = nullptr;
    long slot_count = 0;
    std::map<long, SlotCharges> charges;           // slot -> charges (1-based slots)
    std::map<long, std::size_t> a_accept, b_accept, opt_accept;
    std::map<std::size_t, long> a_inv, b_inv, opt_inv;
    std::vector<std::string> violations;           // rule breaches (foreign traces)

    const SlotCharges& at(long s) const;
    /// Accepted job of the slot's owning half (A owns odd slots).
    std::optional<std::size_t> accepted_in(long s) const;
    Rat total_charged() const;
};

/// Distributes every offline job's weight onto slots of the two online
/// halves: full weight downward when the same-parity half accepted something
/// at least as heavy in the same slot, otherwise half to the slot where that
/// half accepted the job itself and half to the other half's acceptance slot
/// of the job or, failing that, backward to the preceding slot.
/// All three traces must be feasible for the same unit-length instance.
ChargeLedger compute_charges(const Trace& opt_trace, const Trace& a_trace, const Trace& b_trace,
                             const Instance& inst);

enum class SlotKind { Good, Mid, Bad };  // <=1 unit, 1.5 units, 2 units

struct SlotClassification {
    std::map<long, SlotKind> kind;
    struct BadInfo {
        std::size_t x_job;  // job accepted in the bad slot
        std::size_t y_job;  // offline job of the following slot, source of the backward charge
    };
    std::map<long, BadInfo> bad;
};

SlotClassification classify_slots(const ChargeLedger& ledger);

/// Pairs every bad slot with a distinct good slot whose accepted weight is
/// at least w(Y), following the special-slot search. Throws PairingFailure
/// if the search cannot complete (impossible for traces produced by the
/// bundled restart policy; reachable for foreign traces).
std::map<long, long> pair_bad_slots(const ChargeLedger& ledger, const SlotClassification& cls);

struct ChargingReport {
    bool ok = true;
    Rat opt_value, ab_value;
    std::vector<std::string> violations;
    void fail(std::string v) { ok = false; violations.push_back(std::move(v)); }
};

/// Checks conservation (total charged weight equals the offline value), the
/// per-slot and per-pair 1.5 weight bounds, and the aggregate bound
/// opt <= 1.5 (val(A) + val(B)).
ChargingReport verify_ratio(const ChargeLedger& ledger, const SlotClassification& cls,
                            const std::map<long, long>& pairing);

}  // namespace sched
