#pragma once

// Packing DP with every state split by set size p and compressed to a
// (2t - p)-representative subfamily.

#include <optional>
#include <ostream>

#include "kep/dp_exact.hpp"
#include "kep/semi_feasible_dp.hpp"

namespace kep {

struct RepStateKey {
    int k = 0;
    int l = 0;
    int p = 0;
    Vertex v = 0;
    Vertex u = 0;

    StateCoord coord() const { return {k, l, v, u}; }
    friend auto operator<=>(const RepStateKey&, const RepStateKey&) = default;
};

template <VertexSetType S = MaskSet>
class RepStateTable {
public:
    using Family = typename SemiFeasibleTable<S>::Family;

    explicit RepStateTable(const KepInstance& inst) : table_(inst, TableMode::Representative) {}

    const SemiFeasibleTable<S>& raw() const { return table_; }
    const KepInstance& instance() const { return table_.instance(); }

    std::vector<S> family(const RepStateKey& key) const {
        std::vector<S> out;
        if (const auto* fam = table_.family(key.coord(), key.p)) {
            for (const auto& e : *fam) out.push_back(e.set);
        }
        return out;
    }

    // Nonempty keys in ascending (k, l, v, u, p) order.
    std::vector<RepStateKey> keys() const {
        std::vector<RepStateKey> out;
        for (const auto& [c, cl] : table_.cells()) {
            for (std::size_t p = 0; p < cl.by_p.size(); ++p) {
                if (!cl.by_p[p].empty()) out.push_back({c.k, c.l, static_cast<int>(p), c.v, c.u});
            }
        }
        return out;
    }

    std::optional<RepStateKey> winning_key() const {
        const int t = instance().t;
        for (const auto& key : keys()) {
            if (key.k >= t && key.k <= key.p && key.p <= 2 * t && table_.closable(key.coord())) return key;
        }
        return std::nullopt;
    }

    Packing reconstruct(const RepStateKey& key) const {
        const auto semi = table_.replay_verified(key.coord(), key.p, 0);
        Packing packing = semi.to_packing();
        if (!is_feasible_packing(instance(), packing) || packing_total_length(packing) != key.k) {
            throw Error(ErrorKind::CorruptParentChain, "replayed packing is not feasible");
        }
        return packing;
    }

    TableStats stats() const { return table_.stats(); }
    void dump(std::ostream& os) const { table_.dump(os, true); }

private:
    SemiFeasibleTable<S> table_;
};

template <VertexSetType S = MaskSet>
RepStateTable<S> build_rep_table(const KepInstance& inst) {
    return RepStateTable<S>(inst);
}

inline bool decide_rep(const KepInstance& inst) {
    if (inst.t <= 0) return true;
    if (inst.n() <= MaskSet::kMaxVertices) return build_rep_table<MaskSet>(inst).winning_key().has_value();
    return build_rep_table<IdSet>(inst).winning_key().has_value();
}

namespace detail {

template <VertexSetType S>
SolveResult solve_rep_impl(const KepInstance& clamped) {
    const auto table = build_rep_table<S>(clamped);
    SolveResult res;
    res.decided_by = DecidedBy::Table;
    res.stats = table.stats();
    if (auto key = table.winning_key()) {
        res.decision = true;
        res.witness = table.reconstruct(*key);
    }
    return res;
}

} // namespace detail

// Full deterministic pipeline: long segment checks, clamping, compressed table.
inline SolveResult solve(const KepInstance& inst, std::size_t cycle_search_max_n = 20) {
    if (auto early = detail::trivial_or_part1(inst, cycle_search_max_n)) return *early;
    const KepInstance clamped = clamp_limits(inst);
    if (clamped.n() <= MaskSet::kMaxVertices) return detail::solve_rep_impl<MaskSet>(clamped);
    return detail::solve_rep_impl<IdSet>(clamped);
}

} // namespace kep
