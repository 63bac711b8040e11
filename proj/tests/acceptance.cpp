// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when all pass.

#include "prfair/axioms.hpp"
#include "prfair/baselines.hpp"
#include "prfair/evaluation.hpp"
#include "prfair/io/generators.hpp"
#include "prfair/io/json.hpp"
#include "prfair/prf_engine.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace prfair;

namespace {

struct Verdict {
    bool        pass{true};
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, pattern, args...);
    return buffer;
}

Verdict center_count_and_termination() {
    SeededRng   rng{1001};
    std::size_t wrong = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto inst = fixtures::random_instance(rng, {1, 60, 10, 3, trial % 2 == 1});
        if (select_prf_centers(inst).outcome.size() != inst.k()) ++wrong;
    }
    SeededRng          big_rng{1002};
    std::vector<Point> agents;
    for (int i = 0; i < 500; ++i) agents.push_back(Point{100.0 * big_rng.uniform(), 100.0 * big_rng.uniform()});
    const auto   big   = Instance::unconstrained(std::move(agents), 20);
    const auto   start = Clock::now();
    const auto   sel   = select_prf_centers(big);
    const double took  = seconds_since(start);
    return {wrong == 0 && sel.outcome.size() == 20 && took < 60.0,
            fmt("500 random instances, %zu with wrong count; n=500 k=20 returned %zu centers in %.2fs (limit 60s)",
                wrong, sel.outcome.size(), took)};
}

Verdict prf_satisfaction() {
    SeededRng         rng{2001};
    std::size_t       violations = 0;
    const CheckOptions exhaustive{CheckMode::exhaustive};
    for (int trial = 0; trial < 200; ++trial) {
        const bool discrete = trial % 2 == 1;
        const auto inst     = fixtures::random_instance(rng, {1, 12, 6, 3, discrete});
        const auto x        = select_prf_centers(inst).outcome;
        const auto report =
            discrete ? check_prf_discrete(inst, x, exhaustive) : check_prf_unconstrained(inst, x, exhaustive);
        if (!report.satisfied) ++violations;
    }
    return {violations == 0, fmt("200 instances (100 per mode), %zu exhaustive PRF violations", violations)};
}

Verdict unanimous_proportionality_separation() {
    const auto inst = io::generate("two_mass", {{"a", 100}, {"b", 10}, {"k", 11}});
    const auto x    = select_prf_centers(inst).outcome;
    std::size_t at_zero = 0;
    for (const std::size_t c : x) at_zero += inst.agents()[c] == Point{0.0} ? 1 : 0;
    const bool engine_ok = at_zero == 10 && x.size() == 11 && check_up(inst, x).satisfied;

    std::vector<std::size_t> swapped{0};
    for (std::size_t c = 100; c < 110; ++c) swapped.push_back(c);
    const Outcome sw{swapped};
    const bool    pf   = check_pf(inst, sw).satisfied;
    const bool    core = check_core(inst, sw).satisfied;
    const auto    up   = check_up(inst, sw);
    return {engine_ok && pf && core && !up.satisfied && witness_is_violation(inst, sw, up),
            fmt("engine: %zu centers at 0, %zu at 1; swapped outcome: PF %s, CORE %s, UP %s", at_zero,
                x.size() - at_zero, pf ? "holds" : "fails", core ? "holds" : "fails",
                up.satisfied ? "holds" : "fails")};
}

Verdict pf_nonexistence_hexagon() {
    const auto  start  = Clock::now();
    const auto  inst   = io::generate("hexagon");
    std::size_t failed = 0;
    std::size_t total  = 0;
    bool        agree  = true;
    fixtures::for_each_combination(6, 3, [&](const std::vector<std::size_t>& pick) {
        const Outcome x{pick};
        const auto    brute = check_pf_bruteforce(inst, x);
        ++total;
        if (!brute.satisfied && witness_is_violation(inst, x, brute)) ++failed;
        agree = agree && brute.satisfied == check_pf(inst, x).satisfied;
    });
    const double took = seconds_since(start);
    return {total == 20 && failed == 20 && agree && took < 1.0,
            fmt("%zu of %zu agent-location triples fail PF (deviations over %zu candidate points) in %.3fs", failed,
                total, inst.num_candidates(), took)};
}

Verdict kmeans_violates_prf_three_circles() {
    const auto start = Clock::now();
    const auto inst  = io::generate("three_circles", {{"m", 12}});

    const auto       engine = select_prf_centers(inst).outcome;
    std::vector<int> per_circle(3, 0);
    for (const std::size_t c : engine) ++per_circle[c / 12];
    const auto engine_report = check_prf_unconstrained(inst, engine);
    const bool engine_ok     = per_circle == std::vector<int>{1, 1, 1} && engine_report.satisfied &&
                           engine_report.definitive;

    double     objective = 0.0;
    const auto optimum   = fixtures::brute_force_kmeans(inst, &objective);
    std::size_t on_big   = 0;
    for (const std::size_t c : optimum) on_big += c >= 24 ? 1 : 0;
    const Outcome optimum_x{optimum};
    const auto    kmeans_report = check_prf_unconstrained(inst, optimum_x);
    const bool    kmeans_ok     = on_big == 2 && !kmeans_report.satisfied &&
                           witness_is_violation(inst, optimum_x, kmeans_report);
    const double took = seconds_since(start);
    return {engine_ok && kmeans_ok && took < 300.0,
            fmt("engine centers per circle %d/%d/%d, PRF %s (%s); k-means optimum (objective %.4f) has %zu on the "
                "big circle, PRF %s; %.2fs",
                per_circle[0], per_circle[1], per_circle[2], engine_report.satisfied ? "holds" : "fails",
                std::string{to_string(engine_report.mode)}.c_str(), objective, on_big,
                kmeans_report.satisfied ? "holds" : "fails", took)};
}

Verdict greedy_underfills() {
    const auto inst   = Instance::unconstrained({Point{0.0}, Point{0.0}, Point{1.0}}, 3);
    const auto result = greedy_capture(inst);
    std::vector<double> locations;
    for (const std::size_t c : result.outcome) locations.push_back(inst.candidates()[c][0]);
    const bool ok = result.outcome.size() == 2 && result.underfilled && locations == std::vector<double>{0.0, 1.0};
    return {ok, fmt("%zu centers, underfilled=%s", result.outcome.size(), result.underfilled ? "true" : "false")};
}

Verdict prf2_nonexistence() {
    const auto  inst   = io::generate("prf2_counterexample");
    std::size_t failed = 0;
    std::size_t total  = 0;
    fixtures::for_each_combination(inst.num_candidates(), 2, [&](const std::vector<std::size_t>& pick) {
        const Outcome x{pick};
        const auto    report = check_prf2(inst, x);
        ++total;
        if (!report.satisfied && witness_is_violation(inst, x, report)) ++failed;
    });
    return {total == 6 && failed == 6, fmt("%zu of %zu candidate pairs fail PRF-II", failed, total)};
}

Verdict oracle_equivalence() {
    SeededRng   rng{8001};
    std::size_t mismatches = 0;
    std::size_t violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto    inst = fixtures::random_instance(rng, {1, 12, 5, 2, trial % 2 == 1});
        const Outcome x    = fixtures::random_outcome(rng, inst);
        const bool    pf   = check_pf(inst, x).satisfied;
        const bool    core = check_core(inst, x).satisfied;
        if (pf != check_pf_bruteforce(inst, x).satisfied) ++mismatches;
        if (core != check_core_bruteforce(inst, x).satisfied) ++mismatches;
        violations += (pf ? 0 : 1) + (core ? 0 : 1);
    }
    return {mismatches == 0,
            fmt("200 instances, %zu verdict mismatches (%zu violations among 400 verdicts)", mismatches, violations)};
}

Verdict scale_invariance() {
    SeededRng   rng{9001};
    std::size_t changed = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = fixtures::random_instance(rng, {1, 40, 8, 3, trial % 2 == 1});
        const auto base = select_prf_centers(inst).outcome;
        for (const double alpha : {0.5, 3.0, 1000.0}) {
            if (select_prf_centers(inst.scaled(alpha)).outcome != base) ++changed;
        }
    }
    return {changed == 0, fmt("100 instances x 3 factors, %zu selections changed", changed)};
}

Verdict mixture_sign_pattern() {
    const auto     start = Clock::now();
    ExperimentGrid grid;
    grid.datasets   = {{"mixture", io::generate("gaussian_mixture", {{"components", 3}, {"per_component", 100}})}};
    grid.algorithms = {Algorithm::prf, Algorithm::kmeanspp};
    grid.k_min      = 1;
    grid.k_max      = 30;
    grid.seeds      = {1, 2, 3, 4, 5};
    const auto summary = run_experiment(grid).summarize();
    std::optional<double> msd1;
    std::optional<double> msdk;
    for (const auto& s : summary) {
        if (s.algorithm != Algorithm::prf) continue;
        if (s.metric == MsdMetric::closest_one) msd1 = s.percent_vs_kmeanspp;
        if (s.metric == MsdMetric::closest_k) msdk = s.percent_vs_kmeanspp;
    }
    const double took = seconds_since(start);
    return {msd1 && msdk && *msd1 >= 0.0 && *msdk <= 0.0 && took < 600.0,
            fmt("PRF vs k-means++: MSD_1 %+.2f%%, MSD_k %+.2f%% (n=300, k=1..30, 5 seeds) in %.1fs", msd1.value_or(0.0),
                msdk.value_or(0.0), took)};
}

std::string record_text(const Instance& inst, const std::string& algo, std::uint64_t seed) {
    io::RunRecord record{inst, algo};
    if (algo == "prf") {
        auto sel       = select_prf_centers(inst);
        record.outcome = sel.outcome;
        record.trace   = sel.trace;
    } else if (algo == "kmeanspp") {
        record.seed    = seed;
        record.outcome = kmeanspp(inst, seed);
    } else {
        auto result        = greedy_capture(inst, true);
        record.outcome     = result.outcome;
        record.underfilled = result.underfilled;
        record.padded      = result.padded;
    }
    record.reports.push_back(check_up(inst, record.outcome));
    record.reports.push_back(check_prf_unconstrained(inst, record.outcome));
    for (const MsdMetric m : {MsdMetric::closest_one, MsdMetric::closest_half_k, MsdMetric::closest_k}) {
        record.metrics[std::string{to_string(m)}] = evaluate_metric(inst, record.outcome, m);
    }
    return io::run_record_to_json(record).dump(2);
}

std::string results_text() {
    ExperimentGrid grid;
    grid.datasets = {{"mixture", io::generate("gaussian_mixture", {{"per_component", 40}})},
                     {"grid", io::generate("grid_uniform", {{"rows", 5}, {"cols", 5}})}};
    grid.k_max    = 10;
    grid.seeds    = {7, 8};
    const auto         table = run_experiment(grid);
    std::ostringstream out;
    io::write_results_csv(out, table);
    io::write_summary_csv(out, table);
    return out.str();
}

Verdict determinism() {
    const auto  inst      = io::generate("gaussian_mixture", {{"per_component", 20}, {"k", 5}});
    std::size_t compared  = 0;
    std::size_t differing = 0;
    for (const std::string algo : {"prf", "kmeanspp", "greedy"}) {
        for (const std::uint64_t seed : {1u, 99u}) {
            ++compared;
            if (record_text(inst, algo, seed) != record_text(inst, algo, seed)) ++differing;
        }
    }
    ++compared;
    if (results_text() != results_text()) ++differing;
    return {differing == 0, fmt("%zu artifacts regenerated, %zu differ byte-wise", compared, differing)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"AC1 center count and termination", center_count_and_termination},
        {"AC2 PRF satisfaction (exhaustive)", prf_satisfaction},
        {"AC3 UP separates from PF and core", unanimous_proportionality_separation},
        {"AC4 hexagon has no PF outcome", pf_nonexistence_hexagon},
        {"AC5 three circles: engine vs k-means optimum", kmeans_violates_prf_three_circles},
        {"AC6 greedy capture underfills", greedy_underfills},
        {"AC7 PRF-II counterexample", prf2_nonexistence},
        {"AC8 PF/core oracle equivalence", oracle_equivalence},
        {"AC9 scale invariance", scale_invariance},
        {"AC10 mixture MSD sign pattern", mixture_sign_pattern},
        {"AC11 byte-identical reruns", determinism},
    };
    std::size_t failures = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = Clock::now();
        Verdict    v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string{"exception: "} + e.what()};
        }
        std::printf("[%s] %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(),
                    seconds_since(start));
        std::fflush(stdout);
        if (!v.pass) ++failures;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
