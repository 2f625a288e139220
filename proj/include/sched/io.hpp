#pragma once

#include <iosfwd>
#include <string>

#include "sched/model.hpp"

namespace sched {

/// Instance file format: JSON lines. The first line is a header object
///   {"class": "<class name>", "f": {"kind": ..., "a": "n/d", "b": "n/d"}}
/// ("f" present only for the benevolent classes), followed by one object per
/// job: {"id": ..., "r": "n/d", "d": "n/d", "p": "n/d", "w": "n/d"}.
/// Rationals are canonical "num/den" strings and round-trip bit-exactly.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& inst);
void write_instance_file(const std::string& path, const Instance& inst);

/// Trace export, one JSON object per event:
///   {"t": "n/d", "kind": "start"|"abort"|"complete", "id": "<job id>"}
void write_trace(std::ostream& out, const Trace& trace, const Instance& inst);

}  // namespace sched
