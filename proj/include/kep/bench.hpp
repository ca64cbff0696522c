#pragma once

// Cross-solver runs with CSV output.

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kep/color_coding.hpp"
#include "kep/dp_exact.hpp"
#include "kep/dp_repset.hpp"
#include "kep/error.hpp"
#include "kep/oracle.hpp"

namespace kep {

enum class SolverKind { Oracle, Dp, Repset, ColorCoding };

inline std::string to_string(SolverKind s) {
    switch (s) {
    case SolverKind::Oracle: return "oracle";
    case SolverKind::Dp: return "dp";
    case SolverKind::Repset: return "repset";
    case SolverKind::ColorCoding: return "colorcoding";
    }
    return "unknown";
}

inline SolverKind parse_solver(const std::string& s) {
    if (s == "oracle") return SolverKind::Oracle;
    if (s == "dp") return SolverKind::Dp;
    if (s == "repset") return SolverKind::Repset;
    if (s == "colorcoding" || s == "cc") return SolverKind::ColorCoding;
    throw Error(ErrorKind::InvalidParameter, "unknown solver '" + s + "'");
}

struct SolverOptions {
    std::size_t budget_n = 14;           // oracle refuses larger instances
    std::size_t cycle_search_max_n = 20; // exact long cycle search cap
    CcOptions cc;
};

struct SolveOutcome {
    bool decision = false;
    std::optional<Packing> witness;
    TableStats stats;
};

using SolverFn = std::function<SolveOutcome(const KepInstance&, std::uint64_t seed)>;

inline SolverFn make_solver(SolverKind kind, const SolverOptions& opt) {
    switch (kind) {
    case SolverKind::Oracle:
        return [opt](const KepInstance& inst, std::uint64_t) {
            oracle::EnumerationBudget budget;
            budget.max_n = opt.budget_n;
            auto r = oracle::solve_exhaustive(inst, budget);
            SolveOutcome o{r.decision, std::nullopt, {}};
            if (r.decision) o.witness = r.best;
            return o;
        };
    case SolverKind::Dp:
        return [opt](const KepInstance& inst, std::uint64_t) {
            auto r = solve_exact(inst, opt.cycle_search_max_n);
            return SolveOutcome{r.decision, r.witness, r.stats};
        };
    case SolverKind::Repset:
        return [opt](const KepInstance& inst, std::uint64_t) {
            auto r = solve(inst, opt.cycle_search_max_n);
            return SolveOutcome{r.decision, r.witness, r.stats};
        };
    case SolverKind::ColorCoding:
        return [opt](const KepInstance& inst, std::uint64_t seed) {
            CcOptions cc = opt.cc;
            cc.seed = seed;
            cc.cycle_search_max_n = opt.cycle_search_max_n;
            auto r = cc_solve(inst, cc);
            return SolveOutcome{r.decision, r.witness, {}};
        };
    }
    throw Error(ErrorKind::InvalidParameter, "unknown solver");
}

struct BenchRecord {
    std::string instance_id;
    std::string solver;
    bool decision = false;
    std::string status = "ok"; // ok, error:<kind>, verify-failed
    bool disagree = false;
    int witness_length = -1;
    std::int64_t wall_time_ns = 0;
    std::size_t max_family_size = 0;
    std::size_t states_nonempty = 0;
    std::uint64_t seed = 0;

    bool ok() const { return status == "ok"; }
};

// Runs one solver and checks its witness. Solver errors land in `status`;
// a yes without a feasible witness of length >= t is "verify-failed".
inline BenchRecord run_solver(const KepInstance& inst, const std::string& name, const SolverFn& fn,
                              std::uint64_t seed = 0, const std::string& instance_id = "") {
    BenchRecord rec;
    rec.instance_id = instance_id;
    rec.solver = name;
    rec.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    try {
        const SolveOutcome out = fn(inst, seed);
        rec.wall_time_ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
        rec.decision = out.decision;
        rec.max_family_size = out.stats.max_family_size;
        rec.states_nonempty = out.stats.states_nonempty;
        if (out.witness) rec.witness_length = packing_total_length(*out.witness);
        if (out.decision && (!out.witness || !is_feasible_packing(inst, *out.witness) || rec.witness_length < inst.t)) {
            rec.status = "verify-failed";
        }
    } catch (const Error& e) {
        rec.wall_time_ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
        rec.status = "error:" + std::string(to_string(e.kind()));
    }
    return rec;
}

inline BenchRecord run_solver(const KepInstance& inst, SolverKind kind, const SolverOptions& opt = {},
                              std::uint64_t seed = 0, const std::string& instance_id = "") {
    return run_solver(inst, to_string(kind), make_solver(kind, opt), seed, instance_id);
}

struct BenchInstance {
    std::string id;
    KepInstance instance;
    std::uint64_t seed = 0;
};

struct NamedSolver {
    std::string name;
    SolverFn fn;
};

struct BenchSummary {
    std::vector<BenchRecord> records;
    std::size_t disagreements = 0; // instances with conflicting ok decisions
    std::size_t failures = 0;      // records with verify-failed

    // 0 when every solver agreed and every witness verified, else 2.
    int exit_code() const { return disagreements == 0 && failures == 0 ? 0 : 2; }
};

inline constexpr const char* kBenchHeader = "instance_id,solver,decision,witness_length,wall_time_ns,max_family_size,states_nonempty,seed";

// The decision column holds true/false; a flagged row holds its status
// instead (disagree:<decision>, verify-failed, error:<kind>).
inline std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream os;
    os << kBenchHeader << '\n';
    for (const auto& r : records) {
        std::string decision = r.decision ? "true" : "false";
        if (!r.ok()) decision = r.status;
        else if (r.disagree) decision = "disagree:" + decision;
        os << r.instance_id << ',' << r.solver << ',' << decision << ',' << r.witness_length << ',' << r.wall_time_ns
           << ',' << r.max_family_size << ',' << r.states_nonempty << ',' << r.seed << '\n';
    }
    return os.str();
}

// Runs every solver on every instance (instances spread over `jobs`
// threads), flags disagreements, and writes the CSV (truncating) if a path
// is given.
inline BenchSummary bench_suite(const std::vector<BenchInstance>& instances, const std::vector<NamedSolver>& solvers,
                                const std::string& csv_path = "", unsigned jobs = 1) {
    std::vector<std::vector<BenchRecord>> per_instance(instances.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            for (const auto& s : solvers) {
                per_instance[i].push_back(
                    run_solver(instances[i].instance, s.name, s.fn, instances[i].seed, instances[i].id));
            }
        }
    };
    jobs = std::max(1U, jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    BenchSummary summary;
    for (auto& recs : per_instance) {
        bool seen_true = false, seen_false = false;
        for (const auto& r : recs) {
            if (!r.ok()) continue;
            (r.decision ? seen_true : seen_false) = true;
        }
        if (seen_true && seen_false) {
            ++summary.disagreements;
            for (auto& r : recs) r.disagree = r.ok();
        }
        for (auto& r : recs) {
            if (r.status == "verify-failed") ++summary.failures;
            summary.records.push_back(std::move(r));
        }
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::trunc);
        if (!out) throw Error(ErrorKind::IoError, "cannot write " + csv_path);
        out << bench_csv(summary.records);
        if (!out) throw Error(ErrorKind::IoError, "write failed for " + csv_path);
    }
    return summary;
}

inline std::vector<NamedSolver> standard_solvers(const std::vector<SolverKind>& kinds, const SolverOptions& opt = {}) {
    std::vector<NamedSolver> out;
    for (auto k : kinds) out.push_back({to_string(k), make_solver(k, opt)});
    return out;
}

} // namespace kep
