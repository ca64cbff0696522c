#pragma once

// Dynamic program over semi-feasible path-cycle packings.
//
// A state (k, l, p, v, u) holds vertex sets of size p of packings P ∪ C ∪ {D}
// with total length k, where P are feasible paths, C feasible cycles, and the
// open segment D has length l and runs v → u (a cycle through v when u = v).
// States are filled in ascending k from four transitions:
//   start        k = l = 1, D is the edge (v, u)
//   close/start  l = 1 < k, a closable open segment is retired and the edge
//                (v, u) opens a new one
//   extend       l > 1, v != u, D grows by the edge (w, u)
//   close cycle  l > 1, v = u, the path v → w is closed by (w, v)
// In exact mode every set is kept. In representative mode sets larger than 2t
// are discarded and each state is replaced by a (2t - p)-representative
// subfamily.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "kep/error.hpp"
#include "kep/model.hpp"
#include "kep/repset.hpp"
#include "kep/solve_result.hpp"
#include "kep/vertex_set.hpp"

namespace kep {

enum class Transition : std::uint8_t { Start, CloseAndStart, Extend, CloseCycle };

struct StateCoord {
    int k = 0;
    int l = 0;
    Vertex v = 0;
    Vertex u = 0;

    friend auto operator<=>(const StateCoord&, const StateCoord&) = default;
};

struct ParentLink {
    Transition via = Transition::Start;
    StateCoord from{};
    int from_p = 0;
    std::uint32_t index = 0;
};

enum class TableMode { Exact, Representative };

template <VertexSetType S>
class SemiFeasibleTable {
public:
    using Entry = Tagged<S, ParentLink>;
    using Family = std::vector<Entry>;

    // Families of one (k, l, v, u), indexed by set size p.
    struct Cell {
        std::vector<Family> by_p;

        const Family* at(int p) const {
            if (p < 0 || static_cast<std::size_t>(p) >= by_p.size() || by_p[static_cast<std::size_t>(p)].empty()) {
                return nullptr;
            }
            return &by_p[static_cast<std::size_t>(p)];
        }
    };

    SemiFeasibleTable(const KepInstance& inst, TableMode mode) : inst_(inst), mode_(mode) {
        if (inst.t >= 1 && (inst.l_p >= inst.t || inst.l_c >= inst.t)) {
            throw Error(ErrorKind::LimitsNotClamped, "l_p = " + std::to_string(inst.l_p) + ", l_c = " +
                                                         std::to_string(inst.l_c) + ", t = " + std::to_string(inst.t));
        }
        if constexpr (std::is_same_v<S, MaskSet>) {
            if (inst.n() > MaskSet::kMaxVertices) {
                throw Error(ErrorKind::InvalidParameter, "bitmask sets need n <= 64");
            }
        }
        if (inst.t < 1) return;
        max_k_ = std::min<int>(2 * inst.t, static_cast<int>(inst.n()));
        max_l_ = std::max(inst.l_p, inst.l_c);
        max_p_ = mode == TableMode::Representative ? 2 * inst.t : static_cast<int>(inst.n());
        if (mode == TableMode::Representative) encoding_.emplace(inst.n(), 2 * inst.t);
        for (int k = 1; k <= max_k_; ++k) build_layer(k);
    }

    const KepInstance& instance() const { return inst_; }
    TableMode mode() const { return mode_; }
    int max_k() const { return max_k_; }
    const std::map<StateCoord, Cell>& cells() const { return cells_; }

    const Cell* cell(const StateCoord& c) const {
        auto it = cells_.find(c);
        return it == cells_.end() ? nullptr : &it->second;
    }

    const Family* family(const StateCoord& c, int p) const {
        const Cell* cl = cell(c);
        return cl == nullptr ? nullptr : cl->at(p);
    }

    // The open segment is a feasible path or a feasible cycle.
    bool closable(const StateCoord& c) const {
        if (c.v != c.u) return inst_.in_b(c.v) && !inst_.in_b(c.u) && c.l <= inst_.l_p;
        return !inst_.in_b(c.v) && c.l <= inst_.l_c;
    }

    TableStats stats() const {
        TableStats s;
        for (const auto& [coord, cl] : cells_) {
            for (const auto& fam : cl.by_p) {
                if (fam.empty()) continue;
                ++s.states_nonempty;
                s.max_family_size = std::max(s.max_family_size, fam.size());
                s.total_sets += fam.size();
            }
        }
        return s;
    }

    // Replays parent links from (coord, p, index) into a semi-feasible
    // packing; throws CorruptParentChain if a link does not fit.
    SemiFeasiblePacking replay(const StateCoord& coord, int p, std::uint32_t index) const {
        const Family* fam = family(coord, p);
        if (fam == nullptr || index >= fam->size()) {
            throw Error(ErrorKind::CorruptParentChain, "dangling state reference");
        }
        const Entry& e = (*fam)[index];
        const ParentLink& link = e.payload;
        const auto corrupt = [&](const std::string& why) {
            return Error(ErrorKind::CorruptParentChain, why + " at k=" + std::to_string(coord.k));
        };
        try {
            switch (link.via) {
            case Transition::Start: {
                if (coord.k != 1 || coord.l != 1) throw corrupt("start link");
                SemiFeasiblePacking out;
                out.open = Segment::path(inst_.graph, {coord.v, coord.u});
                return out;
            }
            case Transition::CloseAndStart: {
                auto out = replay(link.from, link.from_p, link.index);
                if (!out.open) throw corrupt("close link without open segment");
                if (out.open->is_cycle()) out.closed_cycles.push_back(*out.open);
                else out.closed_paths.push_back(*out.open);
                out.open = Segment::path(inst_.graph, {coord.v, coord.u});
                return out;
            }
            case Transition::Extend: {
                auto out = replay(link.from, link.from_p, link.index);
                if (!out.open || !out.open->is_path()) throw corrupt("extend link without open path");
                auto vs = out.open->vertices();
                vs.push_back(coord.u);
                out.open = Segment::path(inst_.graph, std::move(vs));
                return out;
            }
            case Transition::CloseCycle: {
                auto out = replay(link.from, link.from_p, link.index);
                if (!out.open || !out.open->is_path()) throw corrupt("cycle link without open path");
                out.open = Segment::cycle(inst_.graph, out.open->vertices());
                return out;
            }
            }
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::CorruptParentChain) throw;
            throw corrupt(err.what());
        }
        throw corrupt("unknown transition");
    }

    // Replays and checks the packing against the stored state: semi-feasible,
    // vertex set equal to the stored one, total length k, open segment v → u.
    SemiFeasiblePacking replay_verified(const StateCoord& coord, int p, std::uint32_t index) const {
        auto packing = replay(coord, p, index);
        const Entry& e = (*family(coord, p))[index];
        const auto fail = [](const std::string& why) { return Error(ErrorKind::CorruptParentChain, why); };
        if (!is_semi_feasible(inst_, packing)) throw fail("replayed packing is not semi-feasible");
        if (packing.total_length() != coord.k) throw fail("replayed length differs from k");
        if (S::from_ids(packing.to_packing().vertices()) != e.set) throw fail("replayed vertex set differs");
        const Segment& d = *packing.open;
        if (d.length() != coord.l || d.front() != coord.v || (d.is_path() ? d.back() != coord.u : coord.u != coord.v)) {
            throw fail("replayed open segment does not match the state");
        }
        return packing;
    }

    // "k l [p] v u |family| sets..." per nonempty state, ascending.
    void dump(std::ostream& os, bool with_p) const {
        const auto* labels = inst_.labels.empty() ? nullptr : &inst_.labels;
        for (const auto& [c, cl] : cells_) {
            if (with_p) {
                for (std::size_t p = 0; p < cl.by_p.size(); ++p) {
                    if (cl.by_p[p].empty()) continue;
                    os << c.k << ' ' << c.l << ' ' << p << ' ' << inst_.label(c.v) << ' ' << inst_.label(c.u) << ' '
                       << cl.by_p[p].size();
                    for (const auto& e : cl.by_p[p]) os << ' ' << format_set(e.set, labels);
                    os << '\n';
                }
            } else {
                std::vector<S> sets;
                for (const auto& fam : cl.by_p) {
                    for (const auto& e : fam) sets.push_back(e.set);
                }
                if (sets.empty()) continue;
                std::sort(sets.begin(), sets.end());
                os << c.k << ' ' << c.l << ' ' << inst_.label(c.v) << ' ' << inst_.label(c.u) << ' ' << sets.size();
                for (const auto& s : sets) os << ' ' << format_set(s, labels);
                os << '\n';
            }
        }
    }

private:
    struct Source {
        StateCoord coord;
        int p;
        std::uint32_t index;
        const S* set;
    };

    void build_layer(int k) {
        const std::size_t n = inst_.n();
        // Closable states one layer down, in ascending (v', u', l') order.
        std::vector<std::vector<Source>> closable_by_p;
        if (k > 1) {
            std::vector<std::pair<StateCoord, const Cell*>> below;
            for (auto it = cells_.lower_bound(StateCoord{k - 1, 0, 0, 0}); it != cells_.end() && it->first.k == k - 1;
                 ++it) {
                if (closable(it->first)) below.emplace_back(it->first, &it->second);
            }
            std::sort(below.begin(), below.end(), [](const auto& a, const auto& b) {
                return std::tie(a.first.v, a.first.u, a.first.l) < std::tie(b.first.v, b.first.u, b.first.l);
            });
            for (const auto& [c, cl] : below) {
                for (std::size_t p = 0; p < cl->by_p.size(); ++p) {
                    const auto& fam = cl->by_p[p];
                    if (closable_by_p.size() <= p) closable_by_p.resize(p + 1);
                    for (std::uint32_t i = 0; i < fam.size(); ++i) {
                        closable_by_p[p].push_back({c, static_cast<int>(p), i, &fam[i].set});
                    }
                }
            }
        }

        for (int l = 1; l <= std::min(k, max_l_); ++l) {
            for (Vertex v = 0; v < n; ++v) {
                if (l == 1) {
                    if ((inst_.in_b(v) ? inst_.l_p : inst_.l_c) < 1) continue;
                    for (Vertex u : inst_.graph.out(v)) build_edge_state(k, v, u, closable_by_p);
                } else {
                    for (Vertex u = 0; u < n; ++u) {
                        if (inst_.in_b(u)) continue;
                        if (u == v) build_cycle_state(k, l, v);
                        else build_extend_state(k, l, v, u);
                    }
                }
            }
        }
    }

    void build_edge_state(int k, Vertex v, Vertex u, const std::vector<std::vector<Source>>& closable_by_p) {
        const StateCoord target{k, 1, v, u};
        std::vector<Family> pending;
        if (k == 1) {
            const Vertex ids[] = {v, u};
            add(pending, 2, {S::from_ids(ids), ParentLink{Transition::Start, {}, 0, 0}});
        } else {
            const Vertex ids[] = {v, u};
            const S edge = S::from_ids(ids);
            for (std::size_t p = 0; p < closable_by_p.size(); ++p) {
                for (const Source& src : closable_by_p[p]) {
                    if (src.set->intersects(edge)) continue;
                    add(pending, static_cast<int>(p) + 2,
                        {src.set->unite(edge), ParentLink{Transition::CloseAndStart, src.coord, src.p, src.index}});
                }
            }
        }
        commit(target, std::move(pending));
    }

    void build_extend_state(int k, int l, Vertex v, Vertex u) {
        const int cap = inst_.in_b(v) ? inst_.l_p : inst_.l_c;
        if (l > cap) return;
        const StateCoord target{k, l, v, u};
        std::vector<Family> pending;
        for (Vertex w : inst_.graph.in(u)) {
            if (w == v) continue;
            const StateCoord from{k - 1, l - 1, v, w};
            const Cell* cl = cell(from);
            if (cl == nullptr) continue;
            for (std::size_t p = 0; p < cl->by_p.size(); ++p) {
                const auto& fam = cl->by_p[p];
                for (std::uint32_t i = 0; i < fam.size(); ++i) {
                    if (fam[i].set.contains(u)) continue;
                    add(pending, static_cast<int>(p) + 1,
                        {fam[i].set.with(u), ParentLink{Transition::Extend, from, static_cast<int>(p), i}});
                }
            }
        }
        commit(target, std::move(pending));
    }

    void build_cycle_state(int k, int l, Vertex v) {
        if (inst_.in_b(v) || l > inst_.l_c) return;
        const StateCoord target{k, l, v, v};
        std::vector<Family> pending;
        for (Vertex w : inst_.graph.in(v)) {
            if (w == v) continue;
            const StateCoord from{k - 1, l - 1, v, w};
            const Cell* cl = cell(from);
            if (cl == nullptr) continue;
            for (std::size_t p = 0; p < cl->by_p.size(); ++p) {
                const auto& fam = cl->by_p[p];
                for (std::uint32_t i = 0; i < fam.size(); ++i) {
                    add(pending, static_cast<int>(p),
                        {fam[i].set, ParentLink{Transition::CloseCycle, from, static_cast<int>(p), i}});
                }
            }
        }
        commit(target, std::move(pending));
    }

    void add(std::vector<Family>& pending, int p, Entry entry) const {
        if (p > max_p_) return;
        if (pending.size() <= static_cast<std::size_t>(p)) pending.resize(static_cast<std::size_t>(p) + 1);
        pending[static_cast<std::size_t>(p)].push_back(std::move(entry));
    }

    void commit(const StateCoord& target, std::vector<Family> pending) {
        bool any = false;
        for (std::size_t p = 0; p < pending.size(); ++p) {
            auto& fam = pending[p];
            if (fam.empty()) continue;
            if (mode_ == TableMode::Representative) {
                fam = compute_representative(*encoding_, fam, 2 * inst_.t - static_cast<int>(p));
            } else {
                std::unordered_set<S, VertexSetHash<S>> seen;
                Family unique;
                for (auto& e : fam) {
                    if (seen.insert(e.set).second) unique.push_back(std::move(e));
                }
                fam = std::move(unique);
            }
            any = any || !fam.empty();
        }
        if (any) cells_[target].by_p = std::move(pending);
    }

    KepInstance inst_;
    TableMode mode_;
    int max_k_ = 0;
    int max_l_ = 0;
    int max_p_ = 0;
    std::optional<MatroidEncoding> encoding_;
    std::map<StateCoord, Cell> cells_;
};

} // namespace kep
