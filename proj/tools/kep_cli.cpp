// kep: generate, solve, verify and benchmark kidney exchange instances.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 solver disagreement or a
// witness / bound that failed verification.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kep/kep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        kep::write_text_file(path, text);
    }
}

struct GenArgs {
    std::string model = "uniform-random";
    kep::GenSpec spec;
    std::string out;
};

struct SolveArgs {
    std::string instance;
    std::string algo = "repset";
    std::uint64_t seed = 0;
    double delta = 0.01;
    std::uint64_t max_reps = 2'000'000;
    std::string convolution;
    std::size_t budget_n = 14;
    std::string dump_states;
    std::string out;
};

struct VerifyArgs {
    std::string instance;
    std::string solution;
};

struct BenchArgs {
    std::vector<std::string> instances;
    int count = 20;
    int max_n = 9;
    int max_t = 4;
    int max_limit = 6;
    std::uint64_t seed = 1;
    std::vector<std::string> solvers{"oracle", "dp", "repset", "colorcoding"};
    double delta = 0.01;
    std::uint64_t max_reps = 2'000'000;
    std::size_t budget_n = 14;
    unsigned jobs = 1;
    std::string out = "bench.csv";
};

struct AnalyzeArgs {
    int p_max = 50;
    int q_max = 50;
};

kep::SolverOptions solver_options(std::size_t budget_n, double delta, std::uint64_t max_reps) {
    kep::SolverOptions opt;
    opt.budget_n = budget_n;
    opt.cc.delta = delta;
    opt.cc.max_reps = max_reps;
    return opt;
}

int run_gen(const GenArgs& a) {
    kep::GenSpec spec = a.spec;
    spec.model = kep::parse_gen_model(a.model);
    emit(a.out, kep::instance_to_json(kep::generate(spec)).dump(2) + "\n");
    return kExitOk;
}

template <class Table>
void dump_table(const Table& table, const std::string& path) {
    std::ostringstream os;
    table.dump(os);
    emit(path, os.str());
}

int run_solve(const SolveArgs& a) {
    const kep::KepInstance inst = kep::read_instance(a.instance);
    const kep::SolverKind kind = kep::parse_solver(a.algo);
    kep::SolverOptions opt = solver_options(a.budget_n, a.delta, a.max_reps);
    if (!a.convolution.empty()) opt.cc.audit_closure = kep::parse_convolution_mode(a.convolution);

    if (!a.dump_states.empty()) {
        if (kind != kep::SolverKind::Dp && kind != kep::SolverKind::Repset) {
            throw kep::Error(kep::ErrorKind::InvalidParameter, "--dump-states needs --algo dp or repset");
        }
        if (inst.t >= 1) {
            const kep::KepInstance clamped = kep::clamp_limits(inst);
            if (kind == kep::SolverKind::Dp) dump_table(kep::build_state_table<kep::IdSet>(clamped), a.dump_states);
            else dump_table(kep::build_rep_table<kep::IdSet>(clamped), a.dump_states);
        }
    }

    const auto solver = kep::make_solver(kind, opt);
    const kep::SolveOutcome res = solver(inst, a.seed);
    const kep::Packing empty;
    const kep::Packing& packing = res.witness ? *res.witness : empty;
    if (res.decision && (!res.witness || !kep::is_feasible_packing(inst, packing) ||
                         kep::packing_total_length(packing) < inst.t)) {
        std::cerr << "error: witness failed verification\n";
        return kExitMismatch;
    }
    emit(a.out, kep::solution_to_json(res.decision, packing).dump(2) + "\n");
    return kExitOk;
}

int run_verify(const VerifyArgs& a) {
    const kep::KepInstance inst = kep::read_instance(a.instance);
    kep::Solution sol;
    try {
        sol = kep::solution_from_json(kep::read_json_file(a.solution), inst);
    } catch (const kep::Error& e) {
        if (e.kind() == kep::ErrorKind::IoError || e.kind() == kep::ErrorKind::ParseError) throw;
        std::cout << "invalid: " << e.what() << "\n";
        return kExitMismatch;
    }
    const auto report = kep::verify_solution(inst, sol);
    std::cout << (report.ok ? "valid" : "invalid: " + report.message) << "\n";
    return report.ok ? kExitOk : kExitMismatch;
}

int run_bench(const BenchArgs& a) {
    std::vector<kep::BenchInstance> instances;
    for (std::size_t i = 0; i < a.instances.size(); ++i) {
        instances.push_back({a.instances[i], kep::read_instance(a.instances[i]), a.seed + i});
    }
    if (a.instances.empty()) {
        kep::RandomSuite suite;
        suite.max_n = a.max_n;
        suite.max_t = a.max_t;
        suite.max_limit = a.max_limit;
        suite.base_seed = a.seed;
        for (int i = 0; i < a.count; ++i) {
            const auto spec = suite.spec(i);
            instances.push_back({"gen-" + std::to_string(a.seed) + "-" + std::to_string(i), kep::generate(spec),
                                 spec.seed});
        }
    }
    std::vector<kep::SolverKind> kinds;
    for (const auto& s : a.solvers) kinds.push_back(kep::parse_solver(s));
    const auto opt = solver_options(a.budget_n, a.delta, a.max_reps);
    const auto summary = kep::bench_suite(instances, kep::standard_solvers(kinds, opt), a.out, a.jobs);
    std::cerr << summary.records.size() << " records, " << summary.disagreements << " disagreements, "
              << summary.failures << " verification failures\n";
    return summary.exit_code();
}

int run_analyze(const AnalyzeArgs& a) {
    namespace an = kep::analysis;
    const auto m = an::maximize_f();
    const auto rep = an::check_ratio_inequality(a.p_max, a.q_max);
    const double alpha0 = an::alpha_closed_form();
    const bool alpha_ok = std::abs(m.alpha_star - alpha0) <= 1e-6;
    const bool f_ok = m.f_star > 6.75 && m.f_star < 6.855;
    std::cout << std::setprecision(10);
    std::cout << "alpha_star      " << m.alpha_star << "  (closed form " << alpha0 << ")  "
              << (alpha_ok ? "ok" : "FAIL") << "\n";
    std::cout << "f_star          " << m.f_star << "  (bound 6.75 < f < 6.855)  " << (f_ok ? "ok" : "FAIL") << "\n";
    std::cout << "f(1)            " << an::f_alpha(1.0) << "\n";
    std::cout << "ratio grid      " << rep.p_max << " x " << rep.q_max << ", " << rep.checked << " checked, "
              << rep.violations.size() << " violations  " << (rep.ok() ? "ok" : "FAIL") << "\n";
    std::cout << "max ratio       " << rep.max_ratio << " at p=" << rep.argmax_p << " q=" << rep.argmax_q << "\n";
    return alpha_ok && f_ok && rep.ok() ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kidney exchange packing solvers"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a random instance");
    g->add_option("--model", gen.model, "uniform-random or blood-type")->capture_default_str();
    g->add_option("-n,--n", gen.spec.n, "Number of vertices")->capture_default_str();
    g->add_option("--edge-prob", gen.spec.edge_prob, "Edge (or crossmatch) probability")->capture_default_str();
    g->add_option("--altruist-fraction", gen.spec.altruist_fraction)->capture_default_str();
    g->add_option("--l-p", gen.spec.l_p, "Path length limit")->capture_default_str();
    g->add_option("--l-c", gen.spec.l_c, "Cycle length limit")->capture_default_str();
    g->add_option("-t,--t", gen.spec.t, "Target total length")->capture_default_str();
    g->add_option("--seed", gen.spec.seed)->capture_default_str();
    g->add_option("--out", gen.out, "Output file (default stdout)");

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "Decide an instance and print a solution");
    s->add_option("instance", sol.instance, "Instance JSON")->required();
    s->add_option("--algo", sol.algo, "oracle, dp, repset or colorcoding")->capture_default_str();
    s->add_option("--seed", sol.seed)->capture_default_str();
    s->add_option("--delta", sol.delta, "Color coding failure probability")->capture_default_str();
    s->add_option("--max-reps", sol.max_reps, "Color coding repetition cap")->capture_default_str();
    s->add_option("--convolution", sol.convolution, "naive or fast: also build G and cross-check it");
    s->add_option("--budget-n", sol.budget_n, "Largest n the oracle accepts")->capture_default_str();
    s->add_option("--dump-states", sol.dump_states, "Write the state table to a file ('-' for stdout)");
    s->add_option("--out", sol.out, "Solution file (default stdout)");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Check a solution against an instance");
    v->add_option("instance", ver.instance)->required();
    v->add_option("solution", ver.solution)->required();

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Run several solvers and compare decisions");
    b->add_option("instances", bench.instances, "Instance files (default: generated suite)");
    b->add_option("--count", bench.count, "Generated instances")->capture_default_str();
    b->add_option("--n-max", bench.max_n)->capture_default_str();
    b->add_option("--t-max", bench.max_t)->capture_default_str();
    b->add_option("--limit-max", bench.max_limit)->capture_default_str();
    b->add_option("--seed", bench.seed)->capture_default_str();
    b->add_option("--solvers", bench.solvers)->delimiter(',')->capture_default_str();
    b->add_option("--delta", bench.delta)->capture_default_str();
    b->add_option("--max-reps", bench.max_reps)->capture_default_str();
    b->add_option("--budget-n", bench.budget_n)->capture_default_str();
    b->add_option("--jobs", bench.jobs)->capture_default_str();
    b->add_option("--out", bench.out, "CSV path")->capture_default_str();

    AnalyzeArgs an;
    auto* a = app.add_subcommand("analyze", "Check the numeric bounds of the compressed DP");
    a->add_option("--p-max", an.p_max)->capture_default_str();
    a->add_option("--q-max", an.q_max)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (g->parsed()) return run_gen(gen);
        if (s->parsed()) return run_solve(sol);
        if (v->parsed()) return run_verify(ver);
        if (b->parsed()) return run_bench(bench);
        if (a->parsed()) return run_analyze(an);
    } catch (const kep::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
