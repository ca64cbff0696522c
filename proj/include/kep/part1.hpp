#pragma once

// Long segment checks run before the packing DP: a feasible path of length
// exactly t, or the shortest feasible cycle with length in [t, l_c]. When both
// fail the limits can be clamped below t.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "kep/error.hpp"
#include "kep/model.hpp"
#include "kep/repset.hpp"
#include "kep/vertex_set.hpp"

namespace kep {

namespace detail {

struct PathLink {
    Vertex prev = 0;
    std::uint32_t index = 0;
};

template <VertexSetType S>
std::optional<Segment> long_path_impl(const KepInstance& inst) {
    const int t = inst.t;
    const std::size_t n = inst.n();
    // Layer `len` holds, per end vertex, a (t - len)-representative family of
    // vertex sets of B-rooted paths with `len` edges.
    const MatroidEncoding enc(n, t + 1);
    using Family = TaggedFamily<S, PathLink>;
    std::vector<std::vector<Family>> layers(static_cast<std::size_t>(t) + 1, std::vector<Family>(n));
    for (Vertex b : inst.altruists) {
        const Vertex ids[] = {b};
        layers[0][b].push_back({S::from_ids(ids), {}});
    }
    for (int len = 1; len <= t; ++len) {
        auto& prev = layers[static_cast<std::size_t>(len - 1)];
        auto& cur = layers[static_cast<std::size_t>(len)];
        for (Vertex u = 0; u < n; ++u) {
            Family candidates;
            for (Vertex w : inst.graph.in(u)) {
                const auto& fam = prev[w];
                for (std::uint32_t i = 0; i < fam.size(); ++i) {
                    if (fam[i].set.contains(u)) continue;
                    candidates.push_back({fam[i].set.with(u), {w, i}});
                }
            }
            cur[u] = compute_representative(enc, candidates, t - len);
        }
    }
    for (Vertex u = 0; u < n; ++u) {
        const auto& fam = layers[static_cast<std::size_t>(t)][u];
        if (fam.empty()) continue;
        std::vector<Vertex> path{u};
        Vertex at = u;
        std::uint32_t idx = 0;
        for (int len = t; len > 0; --len) {
            const PathLink link = layers[static_cast<std::size_t>(len)][at][idx].payload;
            at = link.prev;
            idx = link.index;
            path.push_back(at);
        }
        std::reverse(path.begin(), path.end());
        return Segment::path(inst.graph, std::move(path));
    }
    return std::nullopt;
}

} // namespace detail

// A feasible path of exactly t edges, found by a representative-family path
// DP rooted at the altruists.
inline std::optional<Segment> part1_long_path(const KepInstance& inst) {
    if (inst.t < 1 || inst.l_p < inst.t) {
        throw Error(ErrorKind::InvalidParameter, "long path search needs l_p >= t >= 1");
    }
    if (inst.n() <= MaskSet::kMaxVertices) return detail::long_path_impl<MaskSet>(inst);
    return detail::long_path_impl<IdSet>(inst);
}

// Shortest B-free cycle with length in [max(t, 2), l_c], by exact depth-first
// search through each anchor (the cycle's smallest vertex), shortest first.
inline std::optional<Segment> part1_long_cycle(const KepInstance& inst, std::size_t max_n = 20) {
    if (inst.t < 1 || inst.l_c < inst.t) {
        throw Error(ErrorKind::InvalidParameter, "long cycle search needs l_c >= t >= 1");
    }
    if (inst.n() > max_n) {
        throw Error(ErrorKind::BudgetExceeded,
                    "exact cycle search capped at n = " + std::to_string(max_n) + ", got " + std::to_string(inst.n()));
    }
    const std::size_t n = inst.n();
    std::vector<Vertex> stack;
    std::vector<bool> on_stack(n, false);
    for (int len = std::max(inst.t, 2); len <= inst.l_c && len <= static_cast<int>(n); ++len) {
        for (Vertex anchor = 0; anchor < n; ++anchor) {
            if (inst.in_b(anchor)) continue;
            stack.assign(1, anchor);
            on_stack.assign(n, false);
            on_stack[anchor] = true;
            std::function<bool()> rec = [&]() -> bool {
                if (static_cast<int>(stack.size()) == len) return inst.graph.has_edge(stack.back(), anchor);
                for (Vertex w : inst.graph.out(stack.back())) {
                    if (w <= anchor || on_stack[w] || inst.in_b(w)) continue;
                    stack.push_back(w);
                    on_stack[w] = true;
                    if (rec()) return true;
                    on_stack[w] = false;
                    stack.pop_back();
                }
                return false;
            };
            if (rec()) return Segment::cycle(inst.graph, stack);
        }
    }
    return std::nullopt;
}

// l_p, l_c := min(., t - 1). Only valid once the long segment checks failed.
inline KepInstance clamp_limits(const KepInstance& inst) {
    const int cap = std::max(inst.t - 1, 0);
    return inst.with_limits(std::min(inst.l_p, cap), std::min(inst.l_c, cap));
}

struct LongSegmentHit {
    Segment segment;
    bool is_cycle = false;
};

inline std::optional<LongSegmentHit> run_long_segment_checks(const KepInstance& inst, std::size_t cycle_search_max_n = 20) {
    if (inst.t >= 1 && inst.l_p >= inst.t) {
        if (auto path = part1_long_path(inst)) return LongSegmentHit{*path, false};
    }
    if (inst.t >= 1 && inst.l_c >= inst.t) {
        if (auto cycle = part1_long_cycle(inst, cycle_search_max_n)) return LongSegmentHit{*cycle, true};
    }
    return std::nullopt;
}

} // namespace kep
