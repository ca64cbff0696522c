#pragma once

// Uncompressed packing DP: every family F_{k,l}^{vu} in full, decision over
// closable states with t <= k <= 2t, witness by parent-link replay.

#include <algorithm>
#include <optional>
#include <ostream>
#include <vector>

#include "kep/model.hpp"
#include "kep/part1.hpp"
#include "kep/semi_feasible_dp.hpp"
#include "kep/solve_result.hpp"
#include "kep/vertex_set.hpp"

namespace kep {

using StateKey = StateCoord;

template <VertexSetType S = MaskSet>
class StateTable {
public:
    explicit StateTable(const KepInstance& inst) : table_(inst, TableMode::Exact) {}

    const SemiFeasibleTable<S>& raw() const { return table_; }
    const KepInstance& instance() const { return table_.instance(); }

    // All vertex sets stored at (k, l, v, u), ascending.
    std::vector<S> family(const StateKey& key) const {
        std::vector<S> out;
        if (const auto* cl = table_.cell(key)) {
            for (const auto& fam : cl->by_p) {
                for (const auto& e : fam) out.push_back(e.set);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<S> family(int k, int l, Vertex v, Vertex u) const { return family(StateKey{k, l, v, u}); }

    // First state in key order that satisfies the decision rule.
    std::optional<StateKey> winning_key() const {
        const int t = instance().t;
        for (const auto& [key, cl] : table_.cells()) {
            if (key.k >= t && key.k <= 2 * t && table_.closable(key)) return key;
        }
        return std::nullopt;
    }

    TableStats stats() const { return table_.stats(); }
    void dump(std::ostream& os) const { table_.dump(os, false); }

private:
    SemiFeasibleTable<S> table_;
};

template <VertexSetType S = MaskSet>
StateTable<S> build_state_table(const KepInstance& inst) {
    return StateTable<S>(inst);
}

inline bool decide(const KepInstance& inst) {
    if (inst.t <= 0) return true;
    if (inst.n() <= MaskSet::kMaxVertices) return build_state_table<MaskSet>(inst).winning_key().has_value();
    return build_state_table<IdSet>(inst).winning_key().has_value();
}

// Replays the first stored set at `key` into a verified feasible packing.
template <VertexSetType S>
Packing reconstruct(const StateTable<S>& table, const StateKey& key) {
    const auto* cl = table.raw().cell(key);
    if (cl == nullptr) throw Error(ErrorKind::CorruptParentChain, "empty state");
    for (std::size_t p = 0; p < cl->by_p.size(); ++p) {
        if (cl->by_p[p].empty()) continue;
        const auto semi = table.raw().replay_verified(key, static_cast<int>(p), 0);
        Packing packing = semi.to_packing();
        if (!is_feasible_packing(table.instance(), packing) || packing_total_length(packing) != key.k) {
            throw Error(ErrorKind::CorruptParentChain, "replayed packing is not feasible");
        }
        return packing;
    }
    throw Error(ErrorKind::CorruptParentChain, "empty state");
}

namespace detail {

inline std::optional<SolveResult> trivial_or_part1(const KepInstance& inst, std::size_t cycle_search_max_n) {
    if (inst.t <= 0) return SolveResult{true, Packing(std::vector<Segment>{}), DecidedBy::Trivial, {}};
    if (auto hit = run_long_segment_checks(inst, cycle_search_max_n)) {
        return SolveResult{true, Packing({hit->segment}), hit->is_cycle ? DecidedBy::LongCycle : DecidedBy::LongPath,
                           {}};
    }
    return std::nullopt;
}

template <VertexSetType S>
SolveResult solve_exact_impl(const KepInstance& clamped) {
    const auto table = build_state_table<S>(clamped);
    SolveResult res;
    res.decided_by = DecidedBy::Table;
    res.stats = table.stats();
    if (auto key = table.winning_key()) {
        res.decision = true;
        res.witness = reconstruct(table, *key);
    }
    return res;
}

} // namespace detail

// Long segment checks, clamping, then the full table.
inline SolveResult solve_exact(const KepInstance& inst, std::size_t cycle_search_max_n = 20) {
    if (auto early = detail::trivial_or_part1(inst, cycle_search_max_n)) return *early;
    const KepInstance clamped = clamp_limits(inst);
    if (clamped.n() <= MaskSet::kMaxVertices) return detail::solve_exact_impl<MaskSet>(clamped);
    return detail::solve_exact_impl<IdSet>(clamped);
}

} // namespace kep
