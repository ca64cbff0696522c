#pragma once

// Brute-force reference solvers. Everything here is exponential in n and is
// only meant for small instances; it shares no code with the dynamic programs
// it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_set>
#include <vector>

#include "kep/error.hpp"
#include "kep/model.hpp"
#include "kep/vertex_set.hpp"

namespace kep::oracle {

struct EnumerationBudget {
    std::size_t max_n = 14;
    std::size_t max_segments = 1'000'000;
};

namespace detail {

inline void require_budget(const KepInstance& inst, const EnumerationBudget& budget) {
    if (budget.max_n == 0 || budget.max_segments == 0) {
        throw Error(ErrorKind::InvalidParameter, "enumeration caps must be positive");
    }
    if (inst.n() > budget.max_n || inst.n() > MaskSet::kMaxVertices) {
        throw Error(ErrorKind::BudgetExceeded,
                    "n = " + std::to_string(inst.n()) + " exceeds oracle cap " + std::to_string(budget.max_n));
    }
}

inline std::uint64_t mask_of(const std::vector<Vertex>& vs) {
    std::uint64_t m = 0;
    for (Vertex v : vs) m |= std::uint64_t{1} << v;
    return m;
}

// Simple paths from `start` with 1..max_len edges whose vertices satisfy
// `allowed`; `emit` receives each one.
inline void walk_paths(const KepInstance& inst, Vertex start, int max_len,
                       const std::function<bool(Vertex)>& allowed,
                       const std::function<void(const std::vector<Vertex>&)>& emit) {
    std::vector<Vertex> stack{start};
    std::uint64_t used = std::uint64_t{1} << start;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(stack.size()) - 1 >= max_len) return;
        for (Vertex w : inst.graph.out(stack.back())) {
            if ((used >> w) & 1U || !allowed(w)) continue;
            stack.push_back(w);
            used |= std::uint64_t{1} << w;
            emit(stack);
            rec();
            used &= ~(std::uint64_t{1} << w);
            stack.pop_back();
        }
    };
    rec();
}

} // namespace detail

// Feasible paths (from B, 1..l_p edges) then feasible cycles (B-free, 2..l_c
// edges, rotated so the smallest id comes first).
inline std::vector<Segment> enumerate_feasible_segments(const KepInstance& inst,
                                                        const EnumerationBudget& budget = {}) {
    detail::require_budget(inst, budget);
    std::vector<Segment> out;
    auto push = [&](Segment s) {
        if (out.size() >= budget.max_segments) {
            throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(budget.max_segments) + " segments");
        }
        out.push_back(std::move(s));
    };
    for (Vertex b : inst.altruists) {
        detail::walk_paths(inst, b, inst.l_p, [](Vertex) { return true; },
                           [&](const std::vector<Vertex>& p) { push(Segment::path(inst.graph, p)); });
    }
    for (Vertex s = 0; s < inst.n(); ++s) {
        if (inst.in_b(s)) continue;
        detail::walk_paths(
            inst, s, inst.l_c - 1, [&](Vertex w) { return w > s && !inst.in_b(w); },
            [&](const std::vector<Vertex>& p) {
                if (inst.graph.has_edge(p.back(), s)) push(Segment::cycle(inst.graph, p));
            });
    }
    return out;
}

struct ExhaustiveResult {
    bool decision = false;
    Packing best;
    int best_length = 0;
};

namespace detail {

using PackingKey = std::vector<std::vector<Vertex>>;

inline PackingKey packing_key(const std::vector<const Segment*>& chosen) {
    PackingKey key;
    for (const Segment* s : chosen) {
        auto vs = s->vertices();
        std::sort(vs.begin(), vs.end());
        key.push_back(std::move(vs));
    }
    std::sort(key.begin(), key.end());
    return key;
}

} // namespace detail

// Maximum-length feasible packing by branch and bound. Branches on the lowest
// undecided vertex (left uncovered, or covered by one of its segments in
// descending-length order); the bound counts undecided vertices with an
// incoming edge, since every unit of length is an edge with its own head.
// Ties go to the lexicographically smallest sorted list of sorted vertex sets.
inline ExhaustiveResult solve_exhaustive(const KepInstance& inst, const EnumerationBudget& budget = {}) {
    const auto segments = enumerate_feasible_segments(inst, budget);
    const std::size_t n = inst.n();

    std::vector<std::vector<const Segment*>> by_min_vertex(n);
    std::vector<std::uint64_t> seg_mask(segments.size());
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& vs = segments[i].vertices();
        seg_mask[i] = detail::mask_of(vs);
        by_min_vertex[*std::min_element(vs.begin(), vs.end())].push_back(&segments[i]);
    }
    for (auto& list : by_min_vertex) {
        std::stable_sort(list.begin(), list.end(),
                         [](const Segment* a, const Segment* b) { return a->length() > b->length(); });
    }
    std::uint64_t has_in = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (!inst.graph.in(v).empty()) has_in |= std::uint64_t{1} << v;
    }

    int best_len = 0;
    detail::PackingKey best_key;
    std::vector<const Segment*> best_chosen;
    std::vector<const Segment*> chosen;

    // `decided` holds covered vertices and vertices left uncovered.
    std::function<void(Vertex, std::uint64_t, int)> rec = [&](Vertex next, std::uint64_t decided, int len) {
        const int bound = len + std::popcount(has_in & ~decided);
        if (bound < best_len) return;
        if (len > best_len || (len == best_len && !chosen.empty())) {
            auto key = detail::packing_key(chosen);
            if (len > best_len || best_chosen.empty() || key < best_key) {
                best_len = len;
                best_key = std::move(key);
                best_chosen = chosen;
            }
        }
        while (next < n && ((decided >> next) & 1U)) ++next;
        if (next >= n) return;
        // A segment is filed under its smallest vertex, and every vertex below
        // `next` is decided, so only segments filed under `next` can still fit.
        for (const Segment* s : by_min_vertex[next]) {
            const std::uint64_t m = seg_mask[static_cast<std::size_t>(s - segments.data())];
            if (m & decided) continue;
            chosen.push_back(s);
            rec(next + 1, decided | m, len + s->length());
            chosen.pop_back();
        }
        rec(next + 1, decided | (std::uint64_t{1} << next), len);
    };
    rec(0, 0, 0);

    ExhaustiveResult result;
    std::vector<Segment> picked;
    for (const Segment* s : best_chosen) picked.push_back(*s);
    result.best = Packing(std::move(picked));
    result.best_length = best_len;
    result.decision = best_len >= inst.t;
    return result;
}

// Every vertex set of a feasible packing, grouped by total length, for
// lengths 0..max_length. Built as a closure over (vertex mask, length) states.
class PackingCatalog {
public:
    PackingCatalog(const KepInstance& inst, int max_length, const EnumerationBudget& budget = {})
        : by_length_(static_cast<std::size_t>(std::max(max_length, 0)) + 1) {
        const auto segments = enumerate_feasible_segments(inst, budget);
        std::vector<std::pair<std::uint64_t, int>> segs;
        for (const auto& s : segments) segs.emplace_back(detail::mask_of(s.vertices()), s.length());

        by_length_[0].insert(0);
        // Only vertex sets are kept, so the order segments are added in does
        // not matter and each (mask, length) state is expanded once.
        for (int len = 0; len <= max_length; ++len) {
            for (std::uint64_t mask : by_length_[static_cast<std::size_t>(len)]) {
                for (const auto& [m, l] : segs) {
                    if ((m & mask) != 0 || len + l > max_length) continue;
                    by_length_[static_cast<std::size_t>(len + l)].insert(mask | m);
                }
            }
        }
    }

    int max_length() const { return static_cast<int>(by_length_.size()) - 1; }

    const std::unordered_set<std::uint64_t>& masks(int length) const {
        static const std::unordered_set<std::uint64_t> empty;
        if (length < 0 || length > max_length()) return empty;
        return by_length_[static_cast<std::size_t>(length)];
    }

    bool has_length(int length) const { return !masks(length).empty(); }

private:
    std::vector<std::unordered_set<std::uint64_t>> by_length_;
};

// Exhaustive instantiation of the semi-feasible state family for (k, l, v, u):
// vertex sets of P ∪ C ∪ {D} with D a path v→u (v ≠ u) or a cycle through v
// (u = v) of length l that is admissible as the open segment, and c = k.
class StateFamilyOracle {
public:
    StateFamilyOracle(const KepInstance& inst, int max_k, const EnumerationBudget& budget = {})
        : inst_(inst), catalog_(inst, std::max(max_k - 1, 0), budget), max_k_(max_k) {}

    std::set<MaskSet> family(int k, int l, Vertex v, Vertex u) const {
        std::set<MaskSet> out;
        if (k < 1 || l < 1 || l > k || k > max_k_ || v >= inst_.n() || u >= inst_.n()) return out;
        const int rest = k - l;
        for (std::uint64_t d : open_segments(l, v, u)) {
            for (std::uint64_t c : catalog_.masks(rest)) {
                if ((c & d) == 0) out.insert(MaskSet(c | d));
            }
        }
        return out;
    }

    const PackingCatalog& catalog() const { return catalog_; }

private:
    std::vector<std::uint64_t> open_segments(int l, Vertex v, Vertex u) const {
        std::vector<std::uint64_t> out;
        const bool from_b = inst_.in_b(v);
        if (v != u) {
            const int cap = from_b ? inst_.l_p : inst_.l_c;
            if (l > cap) return out;
            detail::walk_paths(
                inst_, v, l, [&](Vertex w) { return !inst_.in_b(w); },
                [&](const std::vector<Vertex>& p) {
                    if (static_cast<int>(p.size()) - 1 == l && p.back() == u) out.push_back(detail::mask_of(p));
                });
        } else {
            if (from_b || l < 2 || l > inst_.l_c) return out;
            detail::walk_paths(
                inst_, v, l - 1, [&](Vertex w) { return !inst_.in_b(w); },
                [&](const std::vector<Vertex>& p) {
                    if (static_cast<int>(p.size()) == l && inst_.graph.has_edge(p.back(), v)) {
                        out.push_back(detail::mask_of(p));
                    }
                });
        }
        return out;
    }

    const KepInstance& inst_;
    PackingCatalog catalog_;
    int max_k_;
};

inline std::set<MaskSet> enumerate_state_family(const KepInstance& inst, int k, int l, Vertex v, Vertex u,
                                                const EnumerationBudget& budget = {}) {
    if (k < 1 || (inst.t >= 1 && k > 2 * inst.t)) {
        throw Error(ErrorKind::InvalidParameter, "k = " + std::to_string(k) + " outside [1, 2t]");
    }
    return StateFamilyOracle(inst, k, budget).family(k, l, v, u);
}

// True iff a feasible packing with t <= length <= 2t exists.
inline bool has_packing_in_window(const KepInstance& inst, const EnumerationBudget& budget = {}) {
    if (inst.t == 0) return true;
    PackingCatalog catalog(inst, 2 * inst.t, budget);
    for (int len = inst.t; len <= 2 * inst.t; ++len) {
        if (catalog.has_length(len)) return true;
    }
    return false;
}

// Checks representativity by trying every blocker Y ⊆ [0, ground_n) with
// |Y| <= q. Sets are given as sorted id lists.
template <VertexSetType S>
bool check_q_representative(std::size_t ground_n, const std::vector<S>& family, const std::vector<S>& subfamily,
                            int q) {
    if (ground_n > 20) throw Error(ErrorKind::BudgetExceeded, "ground set larger than 20");
    std::unordered_set<std::uint64_t> members;
    auto to_mask = [&](const S& s) {
        std::uint64_t m = 0;
        for (Vertex v : s.to_ids()) {
            if (v >= ground_n) throw Error(ErrorKind::IndexOutOfRange, "element " + std::to_string(v));
            m |= std::uint64_t{1} << v;
        }
        return m;
    };
    std::vector<std::uint64_t> full;
    for (const auto& s : family) {
        full.push_back(to_mask(s));
        members.insert(full.back());
    }
    std::vector<std::uint64_t> sub;
    for (const auto& s : subfamily) {
        sub.push_back(to_mask(s));
        if (members.count(sub.back()) == 0) {
            throw Error(ErrorKind::NotSubfamily, format_set(s) + " is not in the family");
        }
    }
    const int max_q = std::min<int>(q, static_cast<int>(ground_n));
    auto blocked = [&](std::uint64_t y) {
        const auto misses = [y](std::uint64_t x) { return (x & y) == 0; };
        return std::any_of(full.begin(), full.end(), misses) && std::none_of(sub.begin(), sub.end(), misses);
    };
    if (blocked(0)) return false;
    // Every Y of each size 1..q, in Gosper order.
    const std::uint64_t limit = std::uint64_t{1} << ground_n;
    for (int size = 1; size <= max_q; ++size) {
        for (std::uint64_t y = (std::uint64_t{1} << size) - 1; y < limit;) {
            if (blocked(y)) return false;
            const std::uint64_t c = y & (~y + 1);
            const std::uint64_t r = y + c;
            y = (((r ^ y) >> 2) / c) | r;
        }
    }
    return true;
}

template <VertexSetType S>
bool is_subfamily(const std::vector<S>& sub, const std::vector<S>& family) {
    std::set<S> all(family.begin(), family.end());
    return std::all_of(sub.begin(), sub.end(), [&](const S& s) { return all.count(s) != 0; });
}

// Instance check of representativity transitivity on X ⊆ Y ⊆ Z.
template <VertexSetType S>
bool verify_transitivity(const std::vector<S>& x, const std::vector<S>& y, const std::vector<S>& z, int q,
                         std::size_t ground_n) {
    if (!is_subfamily(x, y) || !is_subfamily(y, z)) {
        throw Error(ErrorKind::NotSubfamily, "transitivity needs X ⊆ Y ⊆ Z");
    }
    const bool xy = check_q_representative(ground_n, y, x, q);
    const bool yz = check_q_representative(ground_n, z, y, q);
    return !(xy && yz) || check_q_representative(ground_n, z, x, q);
}

} // namespace kep::oracle
