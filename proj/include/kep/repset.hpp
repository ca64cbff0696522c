#pragma once

// q-representative subfamilies of uniform set families.
//
// Ground element j is encoded as the Vandermonde column (1, g, g^2, ...) with
// g = j + 1 over a prime field, so any `rank` columns are independent. A p-set
// maps to the wedge product of its columns (all p x p minors). For |X| = p and
// |Y| = q with p + q = rank, pairing the two wedges gives det[X | Y], which is
// nonzero exactly when X and Y are disjoint. A family spanned by the kept
// wedges therefore cannot lose a disjoint partner, and the kept sets number at
// most C(rank, p).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kep/error.hpp"
#include "kep/vertex_set.hpp"

namespace kep {

class PrimeField {
public:
    static constexpr std::uint64_t kDefaultModulus = 2147483647ULL;  // 2^31 - 1

    explicit PrimeField(std::uint64_t modulus = kDefaultModulus) : p_(modulus) {
        if (modulus < 2 || modulus >= (std::uint64_t{1} << 32) || !is_prime(modulus)) {
            throw Error(ErrorKind::InvalidParameter, "field modulus " + std::to_string(modulus) + " is not a 32-bit prime");
        }
    }

    std::uint64_t modulus() const { return p_; }
    std::uint64_t reduce(std::uint64_t a) const { return a % p_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }

    std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const {
        std::uint64_t result = 1 % p_;
        base %= p_;
        while (exp != 0) {
            if (exp & 1U) result = mul(result, base);
            base = mul(base, base);
            exp >>= 1U;
        }
        return result;
    }

    std::uint64_t inv(std::uint64_t a) const {
        if (a % p_ == 0) throw Error(ErrorKind::DomainError, "inverse of zero");
        return pow(a, p_ - 2);
    }

private:
    static bool is_prime(std::uint64_t n) {
        if (n < 4) return n >= 2;
        if (n % 2 == 0) return false;
        for (std::uint64_t d = 3; d * d <= n; d += 2) {
            if (n % d == 0) return false;
        }
        return true;
    }

    std::uint64_t p_;
};

// Vandermonde representation of the uniform matroid of rank `rank` over the
// ground set [0, ground_n). Columns exist for `rank` extra padding elements as
// well, so blockers smaller than q can be completed to exactly q elements when
// the ground set itself is too small.
class MatroidEncoding {
public:
    static constexpr int kMaxRank = 22;

    MatroidEncoding(std::size_t ground_n, int rank, PrimeField field = PrimeField())
        : field_(field), ground_n_(ground_n), rank_(rank) {
        if (rank < 0 || rank > kMaxRank) {
            throw Error(ErrorKind::InvalidParameter, "rank " + std::to_string(rank) + " outside [0, 22]");
        }
        if (ground_n + static_cast<std::size_t>(rank) >= field.modulus()) {
            throw Error(ErrorKind::InvalidParameter, "field too small for the ground set");
        }
        const std::size_t table = std::size_t{1} << rank;
        index_.assign(table, 0);
        std::vector<std::uint32_t> next(static_cast<std::size_t>(rank) + 1, 0);
        masks_by_size_.assign(static_cast<std::size_t>(rank) + 1, {});
        for (std::size_t m = 0; m < table; ++m) {
            const auto c = static_cast<std::size_t>(std::popcount(m));
            index_[m] = next[c]++;
            masks_by_size_[c].push_back(static_cast<std::uint32_t>(m));
        }
    }

    const PrimeField& field() const { return field_; }
    std::size_t ground_size() const { return ground_n_; }
    int rank() const { return rank_; }

    // Column entry in `row` for element j: (j + 1)^row.
    std::uint64_t entry(std::size_t element, int row) const {
        return field_.pow(static_cast<std::uint64_t>(element) + 1, static_cast<std::uint64_t>(row));
    }

    std::vector<std::uint64_t> column(std::size_t element, int rows) const {
        std::vector<std::uint64_t> col(static_cast<std::size_t>(rows));
        std::uint64_t g = field_.reduce(static_cast<std::uint64_t>(element) + 1);
        std::uint64_t acc = 1;
        for (int r = 0; r < rows; ++r) {
            col[static_cast<std::size_t>(r)] = acc;
            acc = field_.mul(acc, g);
        }
        return col;
    }

    // Row subsets of size p inside the first `rows` rows, ascending as masks;
    // the position in this list is the wedge coordinate index.
    std::span<const std::uint32_t> row_subsets(int p, int rows) const {
        const auto& all = masks_by_size_[static_cast<std::size_t>(p)];
        const auto count = static_cast<std::size_t>(binomial(rows, p));
        return {all.data(), count};
    }

    std::uint32_t coordinate(std::uint32_t row_mask) const { return index_[row_mask]; }

    static std::uint64_t binomial(int n, int k) {
        if (k < 0 || n < 0 || k > n) return 0;
        std::uint64_t r = 1;
        for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        return r;
    }

private:
    PrimeField field_;
    std::size_t ground_n_;
    int rank_;
    std::vector<std::uint32_t> index_;
    std::vector<std::vector<std::uint32_t>> masks_by_size_;
};

struct WedgeVector {
    int p = 0;
    int rows = 0;
    std::vector<std::uint64_t> coords;

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](std::uint64_t c) { return c == 0; });
    }
};

// Minors of the columns of `elements` (sorted ascending) over the first `rows`
// rows. Built one column at a time by Laplace expansion along the new column.
inline WedgeVector wedge_of_set(const MatroidEncoding& enc, std::span<const Vertex> elements, int rows = -1) {
    if (rows < 0) rows = enc.rank();
    const int p = static_cast<int>(elements.size());
    if (rows > enc.rank() || p > rows) {
        throw Error(ErrorKind::SizeMismatch,
                    "set of size " + std::to_string(p) + " against " + std::to_string(rows) + " rows");
    }
    if (!std::is_sorted(elements.begin(), elements.end()) ||
        std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
        throw Error(ErrorKind::InvalidParameter, "wedge needs strictly ascending elements");
    }
    for (Vertex e : elements) {
        if (e >= enc.ground_size() + static_cast<std::size_t>(enc.rank())) {
            throw Error(ErrorKind::IndexOutOfRange, "element " + std::to_string(e));
        }
    }
    const PrimeField& f = enc.field();
    std::vector<std::uint64_t> current{1};  // the empty wedge
    for (int i = 1; i <= p; ++i) {
        const auto col = enc.column(elements[static_cast<std::size_t>(i - 1)], rows);
        const auto subsets = enc.row_subsets(i, rows);
        std::vector<std::uint64_t> next(subsets.size(), 0);
        for (std::size_t idx = 0; idx < subsets.size(); ++idx) {
            const std::uint32_t s = subsets[idx];
            std::uint64_t acc = 0;
            // Remove each row r of S in turn; the sign is the number of rows of
            // S above r.
            int above = i - 1;
            for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
                const int r = std::countr_zero(rest);
                const std::uint32_t without = s & ~(std::uint32_t{1} << r);
                const std::uint64_t minor = current[enc.coordinate(without)];
                const std::uint64_t term = f.mul(col[static_cast<std::size_t>(r)], minor);
                acc = (above % 2 == 0) ? f.add(acc, term) : f.sub(acc, term);
                --above;
            }
            next[idx] = acc;
        }
        current = std::move(next);
    }
    return WedgeVector{p, rows, std::move(current)};
}

// Generalized Laplace expansion of det[X | Y] along the first p columns:
// sum over row sets S of (-1)^(sum S - sum_{i<p} i) * wX[S] * wY[rows \ S].
inline std::uint64_t complementary_pairing(const MatroidEncoding& enc, const WedgeVector& wx, const WedgeVector& wy) {
    if (wx.rows != wy.rows || wx.p + wy.p != wx.rows) {
        throw Error(ErrorKind::SizeMismatch, "pairing needs |X| + |Y| = rows");
    }
    const PrimeField& f = enc.field();
    const int rows = wx.rows;
    const std::uint32_t full = rows == 32 ? ~0U : ((std::uint32_t{1} << rows) - 1);
    const int base = wx.p * (wx.p - 1) / 2;
    std::uint64_t acc = 0;
    const auto subsets = enc.row_subsets(wx.p, rows);
    for (std::size_t idx = 0; idx < subsets.size(); ++idx) {
        const std::uint32_t s = subsets[idx];
        int sum = 0;
        for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) sum += std::countr_zero(rest);
        const std::uint64_t term = f.mul(wx.coords[idx], wy.coords[enc.coordinate(full & ~s)]);
        acc = ((sum - base) % 2 == 0) ? f.add(acc, term) : f.sub(acc, term);
    }
    return acc;
}

struct NoPayload {
    friend bool operator==(const NoPayload&, const NoPayload&) = default;
};

template <VertexSetType S, class Payload = NoPayload>
struct Tagged {
    S set;
    Payload payload{};
};

template <VertexSetType S, class Payload = NoPayload>
using TaggedFamily = std::vector<Tagged<S, Payload>>;

// Incremental row echelon basis over the field; rows are kept normalized
// with a leading 1 and zero in every earlier row's pivot column.
class EchelonBasis {
public:
    explicit EchelonBasis(const PrimeField& field) : field_(field) {}

    // Reduces `v`; if something is left it joins the basis and true is returned.
    bool insert(std::vector<std::uint64_t> v) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::uint64_t factor = v[pivots_[i]];
            if (factor == 0) continue;
            const auto& row = rows_[i];
            for (std::size_t c = pivots_[i]; c < v.size(); ++c) {
                if (row[c] != 0) v[c] = field_.sub(v[c], field_.mul(factor, row[c]));
            }
        }
        const auto lead = std::find_if(v.begin(), v.end(), [](std::uint64_t c) { return c != 0; });
        if (lead == v.end()) return false;
        const auto pivot = static_cast<std::size_t>(lead - v.begin());
        const std::uint64_t scale = field_.inv(v[pivot]);
        for (std::size_t c = pivot; c < v.size(); ++c) v[c] = field_.mul(v[c], scale);
        rows_.push_back(std::move(v));
        pivots_.push_back(pivot);
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    PrimeField field_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> pivots_;
};

// q-representative subfamily of a uniform family, using the first p + q rows
// of `enc`. Scans the input in order and keeps a set iff its wedge raises the
// rank of the kept wedges; duplicates are dropped first.
template <VertexSetType S, class Payload>
TaggedFamily<S, Payload> compute_representative(const MatroidEncoding& enc, const TaggedFamily<S, Payload>& family,
                                                int q) {
    TaggedFamily<S, Payload> kept;
    if (family.empty()) return kept;
    if (q < 0) throw Error(ErrorKind::InvalidParameter, "q = " + std::to_string(q));
    const std::size_t p = family.front().set.size();
    for (const auto& entry : family) {
        if (entry.set.size() != p) {
            throw Error(ErrorKind::NonUniformFamily, format_set(entry.set) + " has size " +
                                                         std::to_string(entry.set.size()) + ", expected " +
                                                         std::to_string(p));
        }
    }
    const int rows = static_cast<int>(p) + q;
    if (rows > enc.rank()) {
        throw Error(ErrorKind::SizeMismatch, "p + q = " + std::to_string(rows) + " exceeds encoding rank " +
                                                 std::to_string(enc.rank()));
    }
    std::unordered_set<S, VertexSetHash<S>> seen;
    EchelonBasis basis(enc.field());
    for (const auto& entry : family) {
        if (!seen.insert(entry.set).second) continue;
        const auto ids = entry.set.to_ids();
        auto w = wedge_of_set(enc, ids, rows);
        if (basis.insert(std::move(w.coords))) kept.push_back(entry);
    }
    return kept;
}

// Same as above with a fresh encoding of rank p + q over [0, ground_n).
template <VertexSetType S, class Payload>
TaggedFamily<S, Payload> compute_representative(const TaggedFamily<S, Payload>& family, int q, std::size_t ground_n) {
    if (family.empty()) return {};
    if (q < 0) throw Error(ErrorKind::InvalidParameter, "q = " + std::to_string(q));
    const MatroidEncoding enc(ground_n, static_cast<int>(family.front().set.size()) + q);
    return compute_representative(enc, family, q);
}

template <VertexSetType S>
std::vector<S> compute_representative(const std::vector<S>& family, int q, std::size_t ground_n) {
    TaggedFamily<S> tagged;
    tagged.reserve(family.size());
    for (const auto& s : family) tagged.push_back({s, {}});
    std::vector<S> out;
    for (auto& entry : compute_representative(tagged, q, ground_n)) out.push_back(std::move(entry.set));
    return out;
}

} // namespace kep
