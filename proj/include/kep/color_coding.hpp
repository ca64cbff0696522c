#pragma once

// Randomized solver: color vertices with 2t colors, find colorful paths and
// cycles by DP over color subsets, then combine disjoint color sets.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kep/error.hpp"
#include "kep/model.hpp"
#include "kep/part1.hpp"
#include "kep/solve_result.hpp"

namespace kep {

using ColorMask = std::uint32_t;
using BoolTable = std::vector<std::uint8_t>; // indexed by color mask

enum class ConvolutionMode { Naive, Fast };

inline std::string to_string(ConvolutionMode m) { return m == ConvolutionMode::Naive ? "naive" : "fast"; }

inline ConvolutionMode parse_convolution_mode(const std::string& s) {
    if (s == "naive") return ConvolutionMode::Naive;
    if (s == "fast") return ConvolutionMode::Fast;
    throw Error(ErrorKind::InvalidParameter, "unknown convolution mode '" + s + "'");
}

// ---------------------------------------------------------------------------
// Disjoint-union convolutions over subsets of a universe of `bits` elements.

namespace detail {

inline int table_bits(std::size_t size) {
    if (size == 0 || !std::has_single_bit(size)) {
        throw Error(ErrorKind::SizeMismatch, "table size " + std::to_string(size) + " is not a power of two");
    }
    return std::countr_zero(size);
}

// hat[r][X] = #{Y ⊆ X : |Y| = r, a(Y)}
inline std::vector<std::vector<std::int64_t>> ranked_zeta(const BoolTable& a, int bits) {
    const std::size_t size = a.size();
    std::vector<std::vector<std::int64_t>> hat(static_cast<std::size_t>(bits) + 1, std::vector<std::int64_t>(size, 0));
    for (std::size_t x = 0; x < size; ++x) {
        if (a[x]) hat[static_cast<std::size_t>(std::popcount(x))][x] = 1;
    }
    for (auto& layer : hat) {
        for (int b = 0; b < bits; ++b) {
            for (std::size_t x = 0; x < size; ++x) {
                if (x >> b & 1U) layer[x] += layer[x ^ (std::size_t{1} << b)];
            }
        }
    }
    return hat;
}

inline void mobius(std::vector<std::int64_t>& layer, int bits) {
    for (int b = 0; b < bits; ++b) {
        for (std::size_t x = 0; x < layer.size(); ++x) {
            if (x >> b & 1U) layer[x] -= layer[x ^ (std::size_t{1} << b)];
        }
    }
}

} // namespace detail

// C(X) = OR over Y ⊆ X of A(Y) ∧ B(X \ Y).
inline BoolTable disjoint_union_product(const BoolTable& a, const BoolTable& b, ConvolutionMode mode) {
    if (a.size() != b.size()) throw Error(ErrorKind::SizeMismatch, "tables differ in size");
    const int bits = detail::table_bits(a.size());
    const std::size_t size = a.size();
    BoolTable out(size, 0);
    if (mode == ConvolutionMode::Naive) {
        for (std::size_t x = 0; x < size; ++x) {
            // Submasks of x, x itself down to the empty set.
            for (std::size_t y = x;; y = (y - 1) & x) {
                if (a[y] && b[x ^ y]) {
                    out[x] = 1;
                    break;
                }
                if (y == 0) break;
            }
        }
        return out;
    }
    const auto ah = detail::ranked_zeta(a, bits);
    const auto bh = detail::ranked_zeta(b, bits);
    for (int r = 0; r <= bits; ++r) {
        std::vector<std::int64_t> layer(size, 0);
        for (int i = 0; i <= r; ++i) {
            const auto& ai = ah[static_cast<std::size_t>(i)];
            const auto& bi = bh[static_cast<std::size_t>(r - i)];
            for (std::size_t x = 0; x < size; ++x) layer[x] += ai[x] * bi[x];
        }
        detail::mobius(layer, bits);
        for (std::size_t x = 0; x < size; ++x) {
            if (std::popcount(x) == r && layer[x] > 0) out[x] = 1;
        }
    }
    return out;
}

// G(X) = 1 iff X is a disjoint union of one or more nonempty sets with F = 1.
// G(∅) = 0.
inline BoolTable disjoint_union_or_convolution(const BoolTable& f, ConvolutionMode mode) {
    const int bits = detail::table_bits(f.size());
    const std::size_t size = f.size();
    BoolTable g(size, 0);
    if (mode == ConvolutionMode::Naive) {
        // G(X) = OR over ∅ ≠ Y ⊆ X of F(Y) ∧ (Y = X or G(X \ Y)).
        for (std::size_t x = 1; x < size; ++x) {
            for (std::size_t y = x; y != 0; y = (y - 1) & x) {
                if (f[y] && (y == x || g[x ^ y])) {
                    g[x] = 1;
                    break;
                }
            }
        }
        return g;
    }
    BoolTable single = f;
    single[0] = 0;
    BoolTable power = single;
    for (int j = 1; j <= bits; ++j) {
        bool any = false;
        for (std::size_t x = 0; x < size; ++x) {
            if (power[x]) {
                g[x] = 1;
                any = true;
            }
        }
        if (!any || j == bits) break;
        power = disjoint_union_product(power, single, ConvolutionMode::Fast);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Colorings and colored tables.

struct Coloring {
    std::vector<std::uint8_t> chi;
    int colors = 0;
    std::uint64_t seed = 0;

    ColorMask bit(Vertex v) const { return ColorMask{1} << chi[v]; }
};

inline constexpr int kMaxColorTarget = 10; // 2t colors, 2^(2t) table entries

inline Coloring sample_coloring(std::size_t n, int t, std::uint64_t seed) {
    if (t < 1) throw Error(ErrorKind::InvalidParameter, "coloring needs t >= 1");
    if (t > kMaxColorTarget) throw Error(ErrorKind::BudgetExceeded, "color coding supports t <= 10");
    Coloring c;
    c.colors = 2 * t;
    c.seed = seed;
    c.chi.resize(n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, c.colors - 1);
    for (auto& x : c.chi) x = static_cast<std::uint8_t>(pick(rng));
    return c;
}

// f[X] is the vertex mask of v with f(X, v) = 1: a path from B ending at v
// whose vertices carry exactly the colors X, one each, |X| <= l_p + 1.
// g[X * n + v] is the vertex mask of u with g(X, v, u) = 1: a B-avoiding path
// v → u colored exactly X with 2 <= |X| <= l_c.
struct ColorSetTable {
    int colors = 0;
    std::size_t n = 0;
    std::vector<std::uint64_t> f;
    std::vector<std::uint64_t> g;
    BoolTable f_path; // some feasible path with at least one edge
    BoolTable f_cyc;  // some feasible cycle
    BoolTable F;      // f_path ∨ f_cyc
    BoolTable G;      // filled by with_closure

    std::size_t masks() const { return std::size_t{1} << colors; }
    bool f_at(ColorMask x, Vertex v) const { return (f[x] >> v) & 1U; }
    bool g_at(ColorMask x, Vertex v, Vertex u) const { return (g[x * n + v] >> u) & 1U; }
};

inline void colored_dp_into(ColorSetTable& tab, const KepInstance& inst, const Coloring& chi) {
    if (inst.t >= 1 && (inst.l_p >= inst.t || inst.l_c >= inst.t)) {
        throw Error(ErrorKind::LimitsNotClamped, "color coding runs on clamped limits");
    }
    if (inst.n() > 64) throw Error(ErrorKind::InvalidParameter, "color coding needs n <= 64");
    if (chi.chi.size() != inst.n()) throw Error(ErrorKind::SizeMismatch, "coloring size differs from n");
    const std::size_t n = inst.n();
    tab.colors = chi.colors;
    tab.n = n;
    const std::size_t masks = tab.masks();
    tab.f.assign(masks, 0);
    tab.g.assign(masks * n, 0);
    tab.f_path.assign(masks, 0);
    tab.f_cyc.assign(masks, 0);
    tab.F.assign(masks, 0);
    tab.G.clear();

    if (inst.l_p >= 1) {
        for (Vertex b : inst.altruists) tab.f[chi.bit(b)] |= std::uint64_t{1} << b;
    }
    if (inst.l_c >= 2) {
        for (const auto& [v, u] : inst.graph.edges()) {
            if (inst.in_b(v) || chi.chi[v] == chi.chi[u]) continue;
            tab.g[(chi.bit(v) | chi.bit(u)) * n + v] |= std::uint64_t{1} << u;
        }
    }
    // Masks grow by one color per step, so ascending order is topological.
    for (ColorMask x = 1; x < masks; ++x) {
        const int size = std::popcount(x);
        if (std::uint64_t ends = tab.f[x]) {
            if (size >= 2) tab.f_path[x] = 1;
            if (size <= inst.l_p) {
                for (; ends != 0; ends &= ends - 1) {
                    const auto v = static_cast<Vertex>(std::countr_zero(ends));
                    for (Vertex w : inst.graph.out(v)) {
                        if (x & chi.bit(w)) continue;
                        tab.f[x | chi.bit(w)] |= std::uint64_t{1} << w;
                    }
                }
            }
        }
        if (size < 2) continue;
        for (Vertex v = 0; v < n; ++v) {
            std::uint64_t ends = tab.g[x * n + v];
            if (ends == 0) continue;
            for (std::uint64_t e = ends; e != 0; e &= e - 1) {
                const auto u = static_cast<Vertex>(std::countr_zero(e));
                if (inst.graph.has_edge(u, v)) tab.f_cyc[x] = 1;
                if (size >= inst.l_c) continue;
                for (Vertex w : inst.graph.out(u)) {
                    if (x & chi.bit(w)) continue;
                    tab.g[(x | chi.bit(w)) * n + v] |= std::uint64_t{1} << w;
                }
            }
        }
    }
    for (std::size_t x = 0; x < masks; ++x) tab.F[x] = tab.f_path[x] | tab.f_cyc[x];
}

inline ColorSetTable colored_dp(const KepInstance& inst, const Coloring& chi) {
    ColorSetTable tab;
    colored_dp_into(tab, inst, chi);
    return tab;
}

inline void with_closure(ColorSetTable& tab, ConvolutionMode mode) { tab.G = disjoint_union_or_convolution(tab.F, mode); }

// Longest packing whose vertices use exactly the colors X, or -1. A color
// set can be covered by a path (length |Y| - 1) or a cycle (length |Y|), so
// plain G(X) does not fix the length; this tracks it.
struct PackingLengths {
    std::vector<int> best;
    std::vector<ColorMask> last_segment; // color set of one segment in an optimum
};

inline PackingLengths packing_lengths(const ColorSetTable& tab) {
    const std::size_t masks = tab.masks();
    std::vector<std::pair<ColorMask, int>> segments;
    for (ColorMask y = 1; y < masks; ++y) {
        const int size = std::popcount(y);
        if (tab.f_cyc[y]) segments.emplace_back(y, size);
        else if (tab.f_path[y]) segments.emplace_back(y, size - 1);
    }
    PackingLengths out{std::vector<int>(masks, -1), std::vector<ColorMask>(masks, 0)};
    out.best[0] = 0;
    for (ColorMask x = 0; x < masks; ++x) {
        if (out.best[x] < 0) continue;
        for (const auto& [y, len] : segments) {
            if (x & y) continue;
            const int cand = out.best[x] + len;
            if (cand > out.best[x | y]) {
                out.best[x | y] = cand;
                out.last_segment[x | y] = y;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Witness recovery from the tables.

namespace detail {

inline Segment colored_path(const KepInstance& inst, const Coloring& chi, const ColorSetTable& tab, ColorMask y) {
    std::uint64_t ends = tab.f[y];
    if (ends == 0) throw Error(ErrorKind::CorruptParentChain, "no colored path");
    auto v = static_cast<Vertex>(std::countr_zero(ends));
    std::vector<Vertex> rev{v};
    ColorMask x = y;
    while (std::popcount(x) > 1) {
        x ^= chi.bit(v);
        const auto& preds = inst.graph.in(v);
        const auto it = std::find_if(preds.begin(), preds.end(), [&](Vertex u) { return tab.f_at(x, u); });
        if (it == preds.end()) throw Error(ErrorKind::CorruptParentChain, "broken colored path");
        v = *it;
        rev.push_back(v);
    }
    std::reverse(rev.begin(), rev.end());
    return Segment::path(inst.graph, std::move(rev));
}

inline Segment colored_cycle(const KepInstance& inst, const Coloring& chi, const ColorSetTable& tab, ColorMask y) {
    for (Vertex s = 0; s < tab.n; ++s) {
        for (std::uint64_t e = tab.g[y * tab.n + s]; e != 0; e &= e - 1) {
            auto u = static_cast<Vertex>(std::countr_zero(e));
            if (!inst.graph.has_edge(u, s)) continue;
            std::vector<Vertex> rev{u};
            ColorMask x = y;
            while (std::popcount(x) > 2) {
                x ^= chi.bit(u);
                const auto& preds = inst.graph.in(u);
                const auto it = std::find_if(preds.begin(), preds.end(), [&](Vertex w) { return tab.g_at(x, s, w); });
                if (it == preds.end()) throw Error(ErrorKind::CorruptParentChain, "broken colored cycle");
                u = *it;
                rev.push_back(u);
            }
            rev.push_back(s);
            std::reverse(rev.begin(), rev.end());
            return Segment::cycle(inst.graph, std::move(rev));
        }
    }
    throw Error(ErrorKind::CorruptParentChain, "no colored cycle");
}

} // namespace detail

inline Packing extract_witness(const KepInstance& inst, const Coloring& chi, const ColorSetTable& tab,
                               const PackingLengths& lengths, ColorMask x) {
    std::vector<Segment> segments;
    while (x != 0) {
        const ColorMask y = lengths.last_segment[x];
        if (y == 0) throw Error(ErrorKind::CorruptParentChain, "color set without segment");
        segments.push_back(tab.f_cyc[y] ? detail::colored_cycle(inst, chi, tab, y)
                                        : detail::colored_path(inst, chi, tab, y));
        x ^= y;
    }
    return Packing(std::move(segments));
}

// ---------------------------------------------------------------------------
// Solver.

struct CcOptions {
    double delta = 0.01;
    std::uint64_t seed = 0;
    std::uint64_t max_reps = 2'000'000;
    // When set, each repetition also builds G with this convolution and
    // checks it against the length table.
    std::optional<ConvolutionMode> audit_closure;
    std::size_t cycle_search_max_n = 20;
    std::ostream* warnings = &std::cerr;
};

struct CcResult {
    bool decision = false;
    std::optional<Packing> witness;
    DecidedBy decided_by = DecidedBy::ColorCoding;
    std::uint64_t reps_planned = 0;
    std::uint64_t reps_run = 0;
    bool capped = false;
};

inline std::uint64_t planned_repetitions(int t, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidParameter, "delta must lie in (0, 1)");
    const double reps = std::ceil(std::exp(2.0 * t) * std::log(1.0 / delta));
    if (reps >= 1e18) return std::numeric_limits<std::uint64_t>::max();
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(reps));
}

// One-sided: a yes always carries a verified witness.
inline CcResult cc_solve(const KepInstance& inst, const CcOptions& opt = {}) {
    CcResult res;
    if (!(opt.delta > 0.0 && opt.delta < 1.0)) throw Error(ErrorKind::InvalidParameter, "delta must lie in (0, 1)");
    if (inst.t <= 0) {
        res.decision = true;
        res.witness = Packing(std::vector<Segment>{});
        res.decided_by = DecidedBy::Trivial;
        return res;
    }
    if (auto hit = run_long_segment_checks(inst, opt.cycle_search_max_n)) {
        res.decision = true;
        res.witness = Packing({hit->segment});
        res.decided_by = hit->is_cycle ? DecidedBy::LongCycle : DecidedBy::LongPath;
        return res;
    }
    const KepInstance clamped = clamp_limits(inst);
    const int t = clamped.t;
    // Each unit of length is an edge into a distinct vertex.
    std::size_t heads = 0;
    for (Vertex v = 0; v < clamped.n(); ++v) heads += clamped.graph.in(v).empty() ? 0 : 1;
    if (heads < static_cast<std::size_t>(t)) {
        res.decided_by = DecidedBy::Trivial;
        return res;
    }
    res.reps_planned = planned_repetitions(t, opt.delta);
    std::uint64_t reps = res.reps_planned;
    if (reps > opt.max_reps) {
        reps = opt.max_reps;
        res.capped = true;
        if (opt.warnings != nullptr) {
            *opt.warnings << "warning: color coding capped at " << opt.max_reps << " of " << res.reps_planned
                          << " repetitions\n";
        }
    }
    ColorSetTable tab;
    for (std::uint64_t i = 0; i < reps; ++i) {
        const Coloring chi = sample_coloring(clamped.n(), t, opt.seed + i);
        colored_dp_into(tab, clamped, chi);
        const auto lengths = packing_lengths(tab);
        if (opt.audit_closure) {
            with_closure(tab, *opt.audit_closure);
            for (std::size_t x = 1; x < tab.masks(); ++x) {
                if ((lengths.best[x] >= 0) != (tab.G[x] != 0)) {
                    throw Error(ErrorKind::CorruptParentChain, "closure disagrees with packing lengths");
                }
            }
        }
        res.reps_run = i + 1;
        for (ColorMask x = 1; x < tab.masks(); ++x) {
            if (lengths.best[x] < t) continue;
            Packing w = extract_witness(clamped, chi, tab, lengths, x);
            if (!is_feasible_packing(inst, w) || packing_total_length(w) < t) {
                throw Error(ErrorKind::CorruptParentChain, "color coding witness failed verification");
            }
            res.decision = true;
            res.witness = std::move(w);
            return res;
        }
    }
    return res;
}

} // namespace kep
