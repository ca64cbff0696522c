#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kep/error.hpp"
#include "kep/vertex_set.hpp"

namespace kep {

// Immutable compatibility graph. Successor and predecessor lists are sorted by
// vertex id; no self-loops, no duplicate edges.
class DirectedGraph {
public:
    DirectedGraph() = default;

    std::size_t size() const { return out_.size(); }
    const std::vector<Vertex>& out(Vertex v) const { return out_[v]; }
    const std::vector<Vertex>& in(Vertex v) const { return in_[v]; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(Vertex u, Vertex v) const {
        if (u >= size() || v >= size()) return false;
        return edges_.count(key(u, v)) != 0;
    }

    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> list;
        list.reserve(edges_.size());
        for (Vertex u = 0; u < size(); ++u) {
            for (Vertex v : out_[u]) list.emplace_back(u, v);
        }
        return list;
    }

    // Throws SelfLoop / DuplicateEdge / IndexOutOfRange naming the edge.
    static DirectedGraph build(std::size_t n, const std::vector<std::pair<std::int64_t, std::int64_t>>& edges) {
        DirectedGraph g;
        g.out_.assign(n, {});
        g.in_.assign(n, {});
        for (const auto& [u, v] : edges) {
            if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
                throw Error(ErrorKind::IndexOutOfRange,
                            "edge (" + std::to_string(u) + "," + std::to_string(v) + ") outside [0," +
                                std::to_string(n) + ")");
            }
            const auto a = static_cast<Vertex>(u);
            const auto b = static_cast<Vertex>(v);
            if (a == b) throw Error(ErrorKind::SelfLoop, "vertex " + std::to_string(a));
            if (!g.edges_.insert(key(a, b)).second) {
                throw Error(ErrorKind::DuplicateEdge, "(" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
            g.out_[a].push_back(b);
            g.in_[b].push_back(a);
        }
        for (auto& list : g.out_) std::sort(list.begin(), list.end());
        for (auto& list : g.in_) std::sort(list.begin(), list.end());
        return g;
    }

private:
    static std::uint64_t key(Vertex u, Vertex v) { return (std::uint64_t{u} << 32) | v; }

    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::unordered_set<std::uint64_t> edges_;
};

// Unvalidated instance description as read from a file or built by a generator.
struct RawInstance {
    std::int64_t n = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    std::vector<std::int64_t> altruists;
    std::int64_t l_p = 0;
    std::int64_t l_c = 0;
    std::int64_t t = 0;
    std::vector<std::string> labels;
};

struct KepInstance {
    DirectedGraph graph;
    std::vector<bool> is_altruist;
    std::vector<Vertex> altruists;  // sorted
    int l_p = 0;
    int l_c = 0;
    int t = 0;
    std::vector<std::string> labels;

    std::size_t n() const { return graph.size(); }
    bool in_b(Vertex v) const { return is_altruist[v]; }

    std::string label(Vertex v) const {
        return v < labels.size() ? labels[v] : std::to_string(v);
    }

    KepInstance with_target(int target) const {
        KepInstance copy = *this;
        copy.t = target;
        return copy;
    }

    KepInstance with_limits(int path_limit, int cycle_limit) const {
        KepInstance copy = *this;
        copy.l_p = path_limit;
        copy.l_c = cycle_limit;
        return copy;
    }

    RawInstance to_raw() const {
        RawInstance raw;
        raw.n = static_cast<std::int64_t>(n());
        for (const auto& [u, v] : graph.edges()) raw.edges.emplace_back(u, v);
        raw.altruists.assign(altruists.begin(), altruists.end());
        raw.l_p = l_p;
        raw.l_c = l_c;
        raw.t = t;
        raw.labels = labels;
        return raw;
    }
};

inline KepInstance validate_instance(const RawInstance& raw) {
    if (raw.n < 0) throw Error(ErrorKind::InvalidParameter, "n = " + std::to_string(raw.n));
    for (auto [name, value] : {std::pair{"l_p", raw.l_p}, std::pair{"l_c", raw.l_c}, std::pair{"t", raw.t}}) {
        if (value < 0 || value > (1 << 20)) {
            throw Error(ErrorKind::InvalidParameter, std::string(name) + " = " + std::to_string(value));
        }
    }
    if (!raw.labels.empty() && raw.labels.size() != static_cast<std::size_t>(raw.n)) {
        throw Error(ErrorKind::InvalidParameter, "labels has " + std::to_string(raw.labels.size()) +
                                                     " entries for n = " + std::to_string(raw.n));
    }
    const auto n = static_cast<std::size_t>(raw.n);

    KepInstance inst;
    inst.graph = DirectedGraph::build(n, raw.edges);
    inst.is_altruist.assign(n, false);
    for (std::int64_t b : raw.altruists) {
        if (b < 0 || static_cast<std::size_t>(b) >= n) {
            throw Error(ErrorKind::IndexOutOfRange, "altruist " + std::to_string(b));
        }
        inst.is_altruist[static_cast<std::size_t>(b)] = true;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (!inst.is_altruist[v]) continue;
        inst.altruists.push_back(v);
        if (!inst.graph.in(v).empty()) {
            throw Error(ErrorKind::EdgeIntoAltruist,
                        "(" + std::to_string(inst.graph.in(v).front()) + "," + std::to_string(v) + ")");
        }
    }
    inst.l_p = static_cast<int>(raw.l_p);
    inst.l_c = static_cast<int>(raw.l_c);
    inst.t = static_cast<int>(raw.t);
    inst.labels = raw.labels;
    return inst;
}

enum class SegmentKind { Path, Cycle };

// A simple path or cycle of the graph. Cycles list each vertex once; the
// closing edge back to the first vertex is implied.
class Segment {
public:
    static Segment path(const DirectedGraph& g, std::vector<Vertex> vertices) {
        check(g, vertices, SegmentKind::Path);
        return Segment(SegmentKind::Path, std::move(vertices));
    }

    static Segment cycle(const DirectedGraph& g, std::vector<Vertex> vertices) {
        check(g, vertices, SegmentKind::Cycle);
        return Segment(SegmentKind::Cycle, std::move(vertices));
    }

    SegmentKind kind() const { return kind_; }
    bool is_path() const { return kind_ == SegmentKind::Path; }
    bool is_cycle() const { return kind_ == SegmentKind::Cycle; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    Vertex front() const { return vertices_.front(); }
    Vertex back() const { return vertices_.back(); }

    int length() const {
        const auto m = static_cast<int>(vertices_.size());
        return is_path() ? m - 1 : m;
    }

    template <VertexSetType S>
    S vertex_set() const { return S::from_ids(vertices_); }

    std::string format(const KepInstance* inst = nullptr) const {
        std::string out;
        for (Vertex v : vertices_) {
            if (inst != nullptr && !inst->labels.empty()) out += inst->label(v);
            else {
                if (!out.empty()) out += '-';
                out += std::to_string(v);
            }
        }
        if (is_cycle()) {
            if (inst != nullptr && !inst->labels.empty()) out += inst->label(vertices_.front());
            else out += "-" + std::to_string(vertices_.front());
        }
        return out;
    }

    friend bool operator==(const Segment&, const Segment&) = default;

private:
    Segment(SegmentKind kind, std::vector<Vertex> vertices) : kind_(kind), vertices_(std::move(vertices)) {}

    static void check(const DirectedGraph& g, const std::vector<Vertex>& vs, SegmentKind kind) {
        if (vs.size() < 2) throw Error(ErrorKind::InvalidSegment, "segment needs at least 2 vertices");
        std::vector<Vertex> sorted = vs;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.back() >= g.size()) {
            throw Error(ErrorKind::IndexOutOfRange, "segment vertex " + std::to_string(sorted.back()));
        }
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw Error(ErrorKind::InvalidSegment, "repeated vertex in segment");
        }
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
            if (!g.has_edge(vs[i], vs[i + 1])) {
                throw Error(ErrorKind::InvalidSegment,
                            "missing edge (" + std::to_string(vs[i]) + "," + std::to_string(vs[i + 1]) + ")");
            }
        }
        if (kind == SegmentKind::Cycle && !g.has_edge(vs.back(), vs.front())) {
            throw Error(ErrorKind::InvalidSegment,
                        "missing closing edge (" + std::to_string(vs.back()) + "," + std::to_string(vs.front()) + ")");
        }
    }

    SegmentKind kind_;
    std::vector<Vertex> vertices_;
};

inline bool segments_disjoint(const std::vector<const Segment*>& segments) {
    std::vector<Vertex> all;
    for (const Segment* s : segments) all.insert(all.end(), s->vertices().begin(), s->vertices().end());
    std::sort(all.begin(), all.end());
    return std::adjacent_find(all.begin(), all.end()) == all.end();
}

class Packing {
public:
    Packing() = default;

    // Throws InvalidSegment if two segments share a vertex.
    explicit Packing(std::vector<Segment> segments) : segments_(std::move(segments)) {
        std::vector<const Segment*> ptrs;
        for (const auto& s : segments_) ptrs.push_back(&s);
        if (!segments_disjoint(ptrs)) throw Error(ErrorKind::InvalidSegment, "packing segments overlap");
    }

    const std::vector<Segment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> all;
        for (const auto& s : segments_) all.insert(all.end(), s.vertices().begin(), s.vertices().end());
        std::sort(all.begin(), all.end());
        return all;
    }

private:
    std::vector<Segment> segments_;
};

inline int packing_total_length(const Packing& p) {
    int total = 0;
    for (const auto& s : p.segments()) total += s.length();
    return total;
}

inline bool is_feasible_path(const KepInstance& inst, const Segment& s) {
    return s.is_path() && inst.in_b(s.front()) && s.length() <= inst.l_p;
}

inline bool avoids_altruists(const KepInstance& inst, const Segment& s) {
    return std::none_of(s.vertices().begin(), s.vertices().end(), [&](Vertex v) { return inst.in_b(v); });
}

inline bool is_feasible_cycle(const KepInstance& inst, const Segment& s) {
    return s.is_cycle() && s.length() <= inst.l_c && avoids_altruists(inst, s);
}

inline bool is_feasible_segment(const KepInstance& inst, const Segment& s) {
    return s.is_path() ? is_feasible_path(inst, s) : is_feasible_cycle(inst, s);
}

inline bool is_feasible_packing(const KepInstance& inst, const Packing& p) {
    return std::all_of(p.segments().begin(), p.segments().end(),
                       [&](const Segment& s) { return is_feasible_segment(inst, s); });
}

// Feasible closed paths and cycles plus one open segment that may still be a
// B-avoiding path of length at most l_c.
struct SemiFeasiblePacking {
    std::vector<Segment> closed_paths;
    std::vector<Segment> closed_cycles;
    std::optional<Segment> open;

    int total_length() const {
        int total = open ? open->length() : 0;
        for (const auto& s : closed_paths) total += s.length();
        for (const auto& s : closed_cycles) total += s.length();
        return total;
    }

    Packing to_packing() const {
        std::vector<Segment> all = closed_paths;
        all.insert(all.end(), closed_cycles.begin(), closed_cycles.end());
        if (open) all.push_back(*open);
        return Packing(std::move(all));
    }
};

inline bool is_open_segment_admissible(const KepInstance& inst, const Segment& d) {
    if (is_feasible_segment(inst, d)) return true;
    return d.is_path() && d.length() <= inst.l_c && avoids_altruists(inst, d);
}

inline bool is_semi_feasible(const KepInstance& inst, const SemiFeasiblePacking& p) {
    if (!std::all_of(p.closed_paths.begin(), p.closed_paths.end(),
                     [&](const Segment& s) { return is_feasible_path(inst, s); })) {
        return false;
    }
    if (!std::all_of(p.closed_cycles.begin(), p.closed_cycles.end(),
                     [&](const Segment& s) { return is_feasible_cycle(inst, s); })) {
        return false;
    }
    if (p.open && !is_open_segment_admissible(inst, *p.open)) return false;
    std::vector<const Segment*> all;
    for (const auto& s : p.closed_paths) all.push_back(&s);
    for (const auto& s : p.closed_cycles) all.push_back(&s);
    if (p.open) all.push_back(&*p.open);
    return segments_disjoint(all);
}

// family ⊎ s: every member disjoint from s, extended by s; overlapping members
// are dropped.
template <VertexSetType S>
std::vector<S> disjoint_extend(const std::vector<S>& family, const S& s) {
    std::vector<S> out;
    out.reserve(family.size());
    for (const S& x : family) {
        if (!x.intersects(s)) out.push_back(x.unite(s));
    }
    return out;
}

} // namespace kep
