#pragma once

// Instance and solution files (JSON).
//   instance: {"n", "edges": [[u, v], ...], "altruists", "l_p", "l_c", "t", "labels"?}
//   solution: {"decision", "packing": {"paths": [[...]], "cycles": [[...]]}, "total_length"}
// Cycles list each vertex once.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kep/error.hpp"
#include "kep/model.hpp"

namespace kep {

using Json = nlohmann::ordered_json;

inline Json instance_to_json(const KepInstance& inst) {
    const RawInstance raw = inst.to_raw();
    Json j;
    j["n"] = raw.n;
    Json edges = Json::array();
    for (const auto& [u, v] : raw.edges) edges.push_back({u, v});
    j["edges"] = edges;
    j["altruists"] = raw.altruists;
    j["l_p"] = raw.l_p;
    j["l_c"] = raw.l_c;
    j["t"] = raw.t;
    if (!raw.labels.empty()) j["labels"] = raw.labels;
    return j;
}

inline RawInstance raw_instance_from_json(const Json& j) {
    try {
        RawInstance raw;
        raw.n = j.at("n").get<std::int64_t>();
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "edge must be a pair");
            raw.edges.emplace_back(e[0].get<std::int64_t>(), e[1].get<std::int64_t>());
        }
        raw.altruists = j.at("altruists").get<std::vector<std::int64_t>>();
        raw.l_p = j.at("l_p").get<std::int64_t>();
        raw.l_c = j.at("l_c").get<std::int64_t>();
        raw.t = j.at("t").get<std::int64_t>();
        if (j.contains("labels")) raw.labels = j.at("labels").get<std::vector<std::string>>();
        return raw;
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

inline KepInstance instance_from_json(const Json& j) { return validate_instance(raw_instance_from_json(j)); }

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

inline KepInstance read_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

inline void write_instance(const std::string& path, const KepInstance& inst) {
    write_text_file(path, instance_to_json(inst).dump(2) + "\n");
}

struct Solution {
    bool decision = false;
    Packing packing;
    int total_length = 0;
};

inline Json solution_to_json(bool decision, const Packing& packing) {
    Json paths = Json::array();
    Json cycles = Json::array();
    for (const auto& s : packing.segments()) (s.is_path() ? paths : cycles).push_back(s.vertices());
    Json j;
    j["decision"] = decision;
    j["packing"] = {{"paths", paths}, {"cycles", cycles}};
    j["total_length"] = packing_total_length(packing);
    return j;
}

// Builds the segments against the instance graph; malformed segments throw
// InvalidSegment.
inline Solution solution_from_json(const Json& j, const KepInstance& inst) {
    try {
        Solution sol;
        sol.decision = j.at("decision").get<bool>();
        std::vector<Segment> segs;
        const auto& pk = j.at("packing");
        const auto ids = [&](const Json& arr) {
            std::vector<Vertex> vs;
            for (const auto& x : arr) {
                const auto v = x.get<std::int64_t>();
                if (v < 0 || static_cast<std::size_t>(v) >= inst.n()) {
                    throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v));
                }
                vs.push_back(static_cast<Vertex>(v));
            }
            return vs;
        };
        for (const auto& p : pk.at("paths")) segs.push_back(Segment::path(inst.graph, ids(p)));
        for (const auto& c : pk.at("cycles")) segs.push_back(Segment::cycle(inst.graph, ids(c)));
        sol.packing = Packing(std::move(segs));
        sol.total_length = j.at("total_length").get<int>();
        return sol;
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

struct VerifyReport {
    bool ok = true;
    std::string message;
};

// A solution passes when its packing is feasible, the stated length matches,
// and a yes decision reaches the target.
inline VerifyReport verify_solution(const KepInstance& inst, const Solution& sol) {
    const int len = packing_total_length(sol.packing);
    if (!is_feasible_packing(inst, sol.packing)) return {false, "packing is not feasible"};
    if (len != sol.total_length) {
        return {false, "total_length " + std::to_string(sol.total_length) + " differs from packing length " +
                           std::to_string(len)};
    }
    if (sol.decision && len < inst.t) {
        return {false, "decision is yes but length " + std::to_string(len) + " < t = " + std::to_string(inst.t)};
    }
    return {true, "ok"};
}

} // namespace kep
