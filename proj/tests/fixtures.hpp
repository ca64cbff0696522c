#pragma once

#include <string>
#include <vector>

#include "kep/model.hpp"

namespace kep::testing {

// Nine-vertex sample: a..i = 0..8, altruists a and f.
// a→b→c, d⇄e, f→g→h→i→g.
inline KepInstance sample9(int t = 7, int l_p = 3, int l_c = 3) {
    RawInstance raw;
    raw.n = 9;
    raw.edges = {{0, 1}, {1, 2}, {3, 4}, {4, 3}, {5, 6}, {6, 7}, {7, 8}, {8, 6}};
    raw.altruists = {0, 5};
    raw.l_p = l_p;
    raw.l_c = l_c;
    raw.t = t;
    raw.labels = {"a", "b", "c", "d", "e", "f", "g", "h", "i"};
    return validate_instance(raw);
}

inline Vertex id(char c) { return static_cast<Vertex>(c - 'a'); }

template <class S>
S set_of(const std::string& letters) {
    std::vector<Vertex> ids;
    for (char c : letters) ids.push_back(id(c));
    std::sort(ids.begin(), ids.end());
    return S::from_ids(ids);
}

inline KepInstance make_instance(std::int64_t n, std::vector<std::pair<std::int64_t, std::int64_t>> edges,
                                 std::vector<std::int64_t> altruists, int l_p, int l_c, int t) {
    RawInstance raw;
    raw.n = n;
    raw.edges = std::move(edges);
    raw.altruists = std::move(altruists);
    raw.l_p = l_p;
    raw.l_c = l_c;
    raw.t = t;
    return validate_instance(raw);
}

} // namespace kep::testing
