#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace kep {

using Vertex = std::uint32_t;

// Vertex subsets. Two representations share one interface so the dynamic
// programs can be instantiated for either: MaskSet for graphs with at most 64
// vertices, IdSet (sorted ids) for anything larger.
template <class S>
concept VertexSetType = std::regular<S> && std::totally_ordered<S> &&
    requires(const S s, Vertex v, std::span<const Vertex> ids) {
        { S::from_ids(ids) } -> std::same_as<S>;
        { s.contains(v) } -> std::convertible_to<bool>;
        { s.intersects(s) } -> std::convertible_to<bool>;
        { s.with(v) } -> std::same_as<S>;
        { s.unite(s) } -> std::same_as<S>;
        { s.size() } -> std::convertible_to<std::size_t>;
        { s.to_ids() } -> std::same_as<std::vector<Vertex>>;
        { s.hash() } -> std::convertible_to<std::size_t>;
    };

class MaskSet {
public:
    static constexpr std::size_t kMaxVertices = 64;

    constexpr MaskSet() = default;
    constexpr explicit MaskSet(std::uint64_t bits) : bits_(bits) {}

    static MaskSet from_ids(std::span<const Vertex> ids) {
        std::uint64_t bits = 0;
        for (Vertex v : ids) bits |= std::uint64_t{1} << v;
        return MaskSet(bits);
    }

    constexpr bool contains(Vertex v) const { return (bits_ >> v) & 1U; }
    constexpr bool intersects(const MaskSet& o) const { return (bits_ & o.bits_) != 0; }
    constexpr MaskSet with(Vertex v) const { return MaskSet(bits_ | (std::uint64_t{1} << v)); }
    constexpr MaskSet unite(const MaskSet& o) const { return MaskSet(bits_ | o.bits_); }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::uint64_t bits() const { return bits_; }

    std::vector<Vertex> to_ids() const {
        std::vector<Vertex> ids;
        ids.reserve(size());
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
            ids.push_back(static_cast<Vertex>(std::countr_zero(b)));
        }
        return ids;
    }

    std::size_t hash() const { return std::hash<std::uint64_t>{}(bits_); }

    friend constexpr bool operator==(const MaskSet&, const MaskSet&) = default;
    // Ordered by sorted id list so both representations sort identically.
    friend constexpr bool operator<(const MaskSet& a, const MaskSet& b) {
        const std::uint64_t diff = a.bits_ ^ b.bits_;
        if (diff == 0) return false;
        const int first = std::countr_zero(diff);
        // Below `first` the id lists agree; the list holding `first` is smaller
        // unless the other list ends there.
        if ((a.bits_ >> first) & 1U) return (b.bits_ >> first) != 0;
        return (a.bits_ >> first) == 0;
    }
    friend bool operator>(const MaskSet& a, const MaskSet& b) { return b < a; }
    friend bool operator<=(const MaskSet& a, const MaskSet& b) { return !(b < a); }
    friend bool operator>=(const MaskSet& a, const MaskSet& b) { return !(a < b); }

private:
    std::uint64_t bits_ = 0;
};

class IdSet {
public:
    IdSet() = default;

    static IdSet from_ids(std::span<const Vertex> ids) {
        IdSet s;
        s.ids_.assign(ids.begin(), ids.end());
        std::sort(s.ids_.begin(), s.ids_.end());
        s.ids_.erase(std::unique(s.ids_.begin(), s.ids_.end()), s.ids_.end());
        return s;
    }

    bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

    bool intersects(const IdSet& o) const {
        auto a = ids_.begin();
        auto b = o.ids_.begin();
        while (a != ids_.end() && b != o.ids_.end()) {
            if (*a == *b) return true;
            if (*a < *b) ++a; else ++b;
        }
        return false;
    }

    IdSet with(Vertex v) const {
        IdSet s = *this;
        auto it = std::lower_bound(s.ids_.begin(), s.ids_.end(), v);
        if (it == s.ids_.end() || *it != v) s.ids_.insert(it, v);
        return s;
    }

    IdSet unite(const IdSet& o) const {
        IdSet s;
        s.ids_.reserve(ids_.size() + o.ids_.size());
        std::set_union(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                       std::back_inserter(s.ids_));
        return s;
    }

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    std::vector<Vertex> to_ids() const { return ids_; }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (Vertex v : ids_) h = (h ^ v) * 0x100000001b3ULL + (h >> 29);
        return h;
    }

    friend bool operator==(const IdSet&, const IdSet&) = default;
    friend auto operator<=>(const IdSet& a, const IdSet& b) { return a.ids_ <=> b.ids_; }

private:
    std::vector<Vertex> ids_;
};

static_assert(VertexSetType<MaskSet>);
static_assert(VertexSetType<IdSet>);

template <VertexSetType S>
struct VertexSetHash {
    std::size_t operator()(const S& s) const { return s.hash(); }
};

// Renders {0,3,5}; with labels, {a,d,f}.
template <VertexSetType S>
std::string format_set(const S& s, const std::vector<std::string>* labels = nullptr) {
    std::string out = "{";
    bool first = true;
    for (Vertex v : s.to_ids()) {
        if (!first) out += ',';
        first = false;
        if (labels != nullptr && v < labels->size()) out += (*labels)[v];
        else out += std::to_string(v);
    }
    out += '}';
    return out;
}

} // namespace kep
