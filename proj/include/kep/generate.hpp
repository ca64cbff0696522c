#pragma once

// Seeded random compatibility graphs: uniform edge probability or ABO
// blood-type compatibility.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "kep/error.hpp"
#include "kep/model.hpp"

namespace kep {

enum class GenModel { UniformRandom, BloodType };

inline std::string to_string(GenModel m) { return m == GenModel::UniformRandom ? "uniform-random" : "blood-type"; }

inline GenModel parse_gen_model(const std::string& s) {
    if (s == "uniform-random" || s == "uniform") return GenModel::UniformRandom;
    if (s == "blood-type" || s == "blood") return GenModel::BloodType;
    throw Error(ErrorKind::InvalidParameter, "unknown generator model '" + s + "'");
}

enum class BloodType : std::uint8_t { O, A, B, AB };

// ABO rule: O gives to everyone, A and B to their own type and AB, AB only to AB.
inline bool abo_compatible(BloodType donor, BloodType recipient) {
    if (donor == BloodType::O || recipient == BloodType::AB) return true;
    return donor == recipient;
}

struct GenSpec {
    GenModel model = GenModel::UniformRandom;
    std::int64_t n = 9;
    // Edge probability for the uniform model; crossmatch pass rate for the
    // blood-type model.
    double edge_prob = 0.3;
    std::array<double, 4> blood_freq{0.44, 0.42, 0.10, 0.04}; // O, A, B, AB
    double altruist_fraction = 0.2;
    int l_p = 3;
    int l_c = 3;
    int t = 3;
    std::uint64_t seed = 0;
};

struct GeneratedInstance {
    KepInstance instance;
    std::vector<BloodType> blood; // empty for the uniform model
};

inline GeneratedInstance generate_with_types(const GenSpec& spec) {
    const auto bad_prob = [](double p) { return !(p >= 0.0 && p <= 1.0); };
    if (spec.n <= 0) throw Error(ErrorKind::DegenerateSpec, "n must be at least 1");
    if (bad_prob(spec.edge_prob) || bad_prob(spec.altruist_fraction)) {
        throw Error(ErrorKind::InvalidParameter, "probabilities must lie in [0, 1]");
    }
    if (std::any_of(spec.blood_freq.begin(), spec.blood_freq.end(), bad_prob) ||
        std::accumulate(spec.blood_freq.begin(), spec.blood_freq.end(), 0.0) <= 0.0) {
        throw Error(ErrorKind::InvalidParameter, "blood type frequencies must be in [0, 1] with positive sum");
    }
    const auto n = static_cast<std::size_t>(spec.n);
    const auto n_altruists = static_cast<std::size_t>(std::llround(spec.altruist_fraction * static_cast<double>(n)));
    if (n_altruists >= n) throw Error(ErrorKind::DegenerateSpec, "no recipients left after choosing altruists");

    std::mt19937_64 rng(spec.seed);
    std::vector<std::int64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> altruist(n, false);
    RawInstance raw;
    raw.n = spec.n;
    for (std::size_t i = 0; i < n_altruists; ++i) {
        altruist[static_cast<std::size_t>(order[i])] = true;
        raw.altruists.push_back(order[i]);
    }
    std::sort(raw.altruists.begin(), raw.altruists.end());

    GeneratedInstance out{{}, {}};
    if (spec.model == GenModel::BloodType) {
        std::discrete_distribution<int> pick(spec.blood_freq.begin(), spec.blood_freq.end());
        for (std::size_t v = 0; v < n; ++v) out.blood.push_back(static_cast<BloodType>(pick(rng)));
    }
    std::bernoulli_distribution coin(spec.edge_prob);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            const bool compatible = spec.model == GenModel::UniformRandom || abo_compatible(out.blood[u], out.blood[v]);
            // Draw for every ordered pair so the stream does not depend on B.
            const bool pass = coin(rng);
            if (altruist[v] || !compatible || !pass) continue;
            raw.edges.emplace_back(static_cast<std::int64_t>(u), static_cast<std::int64_t>(v));
        }
    }
    raw.l_p = spec.l_p;
    raw.l_c = spec.l_c;
    raw.t = spec.t;
    out.instance = validate_instance(raw);
    return out;
}

inline KepInstance generate(const GenSpec& spec) { return generate_with_types(spec).instance; }

// Seeded stream of specs alternating between the two models. Every
// parameter comes from (base_seed, i), so each instance replays on its own.
struct RandomSuite {
    int max_n = 9;
    int max_t = 5;
    int max_limit = 6;
    bool clamped = false; // draw l_p, l_c below t
    std::uint64_t base_seed = 1;

    GenSpec spec(int i) const {
        std::mt19937_64 rng(base_seed * 1000003ULL + static_cast<std::uint64_t>(i));
        auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
        auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
        GenSpec s;
        s.model = (i % 2 == 0) ? GenModel::UniformRandom : GenModel::BloodType;
        s.n = pick(2, max_n);
        s.t = pick(1, max_t);
        s.l_p = clamped ? pick(0, s.t - 1) : pick(0, max_limit);
        s.l_c = clamped ? pick(0, s.t - 1) : pick(0, max_limit);
        s.altruist_fraction = real(0.0, 0.4);
        s.edge_prob = s.model == GenModel::UniformRandom ? real(0.15, 0.5) : real(0.3, 0.7);
        s.seed = rng();
        if (std::llround(s.altruist_fraction * static_cast<double>(s.n)) >= s.n) s.altruist_fraction = 0.0;
        return s;
    }

    KepInstance instance(int i) const { return generate(spec(i)); }
};

} // namespace kep
