#include "sched/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sched/errors.hpp"

namespace sched {

using nlohmann::json;

static json fn_to_json(const WeightFn& f) {
    json j;
    j["kind"] = f.kind_name();
    j["a"] = f.a.str();
    j["b"] = f.b.str();
    return j;
}

static WeightFn fn_from_json(const json& j) {
    WeightFn f;
    auto k = WeightFn::kind_from_name(j.at("kind").get<std::string>());
    if (!k) throw SchedError(Err::ParseError, "unknown weight function kind");
    f.kind = *k;
    f.a = Rat::parse(j.at("a").get<std::string>());
    f.b = Rat::parse(j.at("b").get<std::string>());
    return f;
}

Instance read_instance(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw SchedError(Err::ParseError, "empty instance file");
    Instance inst;
    try {
        json hdr = json::parse(line);
        auto cls = class_from_name(hdr.at("class").get<std::string>());
        if (!cls) throw SchedError(Err::ParseError, "unknown instance class");
        inst.cls = *cls;
        if (hdr.contains("f")) inst.fn = fn_from_json(hdr["f"]);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json row = json::parse(line);
            Job j;
            j.id = row.at("id").get<std::string>();
            j.r = Rat::parse(row.at("r").get<std::string>());
            j.d = Rat::parse(row.at("d").get<std::string>());
            j.p = Rat::parse(row.at("p").get<std::string>());
            j.w = Rat::parse(row.at("w").get<std::string>());
            inst.jobs.push_back(std::move(j));
        }
    } catch (const json::exception& e) {
        throw SchedError(Err::ParseError, e.what());
    }
    inst.normalize();
    return inst;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchedError(Err::ParseError, "cannot open '" + path + "'");
    return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
    json hdr;
    hdr["class"] = class_name(inst.cls);
    if (inst.fn) hdr["f"] = fn_to_json(*inst.fn);
    out << hdr.dump() << "\n";
    for (const Job& j : inst.jobs) {
        json row;
        row["id"] = j.id;
        row["r"] = j.r.str();
        row["d"] = j.d.str();
        row["p"] = j.p.str();
        row["w"] = j.w.str();
        out << row.dump() << "\n";
    }
}

void write_instance_file(const std::string& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw SchedError(Err::ParseError, "cannot open '" + path + "' for writing");
    write_instance(out, inst);
}

void write_trace(std::ostream& out, const Trace& trace, const Instance& inst) {
    for (const TraceEvent& e : trace.events) {
        json row;
        row["t"] = e.t.str();
        row["kind"] = e.kind == EventKind::Start ? "start"
                    : e.kind == EventKind::Abort ? "abort"
                                                 : "complete";
        row["id"] = inst.jobs.at(e.job).id;
        out << row.dump() << "\n";
    }
}

}  // namespace sched
