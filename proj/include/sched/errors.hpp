#pragma once

#include <stdexcept>
#include <string>

namespace sched {

enum class Err {
    ParseError,
    NonPositiveLength,
    UnknownJobId,
    ClassMismatch,
    NotIntervals,
    TooLarge,
    BadParams,
    BadRange,
    BadPreset,
    SlotGap,
    PolicyContractViolation,
    ReleaseInPast,
    StepCapExceeded,
    InstanceMismatch,
    PairingFailure,
    DegenerateU,
    UnclassifiableState,
};

const char* err_name(Err e);

struct SchedError : std::runtime_error {
    Err code;
    SchedError(Err c, const std::string& msg)
        : std::runtime_error(std::string(err_name(c)) + ": " + msg), code(c) {}
};

}  // namespace sched
