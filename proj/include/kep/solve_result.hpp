#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kep/model.hpp"

namespace kep {

enum class DecidedBy { Trivial, LongPath, LongCycle, Table, ColorCoding, Exhaustive };

inline std::string to_string(DecidedBy d) {
    switch (d) {
    case DecidedBy::Trivial: return "trivial";
    case DecidedBy::LongPath: return "long-path";
    case DecidedBy::LongCycle: return "long-cycle";
    case DecidedBy::Table: return "table";
    case DecidedBy::ColorCoding: return "color-coding";
    case DecidedBy::Exhaustive: return "exhaustive";
    }
    return "unknown";
}

struct TableStats {
    std::size_t states_nonempty = 0;
    std::size_t max_family_size = 0;
    std::size_t total_sets = 0;
};

struct SolveResult {
    bool decision = false;
    std::optional<Packing> witness;
    DecidedBy decided_by = DecidedBy::Table;
    TableStats stats;
};

} // namespace kep
