#pragma once

#include "prfair/baselines.hpp"
#include "prfair/core.hpp"
#include "prfair/prf_engine.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace prfair {

/// Mean over agents of the summed squared distances to the agent's j closest selected centers.
/// With `squared = false` plain distances are summed instead.
inline double msd_j(const Instance& inst, const Outcome& outcome, std::size_t j, bool squared = true) {
    if (j == 0 || j > outcome.size()) {
        throw InputError("MSD needs 1 <= j <= |X| (j=" + std::to_string(j) + ", |X|=" + std::to_string(outcome.size()) +
                         ")");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < inst.n(); ++i) {
        for (const Neighbor& nb : nearest_j(inst, i, outcome, j)) {
            total += squared ? nb.distance * nb.distance : nb.distance;
        }
    }
    return total / static_cast<double>(inst.n());
}

enum class MsdMetric { closest_one, closest_half_k, closest_k };

inline std::string_view to_string(MsdMetric metric) {
    switch (metric) {
        case MsdMetric::closest_one:
            return "msd1";
        case MsdMetric::closest_half_k:
            return "msdhalfk";
        case MsdMetric::closest_k:
            return "msdk";
    }
    return "unknown";
}

inline MsdMetric msd_metric_from_string(std::string_view name) {
    if (name == "msd1") return MsdMetric::closest_one;
    if (name == "msdhalfk") return MsdMetric::closest_half_k;
    if (name == "msdk") return MsdMetric::closest_k;
    throw InputError("unknown metric '" + std::string{name} + "'");
}

/// j for a metric at a given k; "k/2" is ceil(k/2).
constexpr std::size_t msd_depth(MsdMetric metric, std::size_t k) noexcept {
    switch (metric) {
        case MsdMetric::closest_one:
            return 1;
        case MsdMetric::closest_half_k:
            return (k + 1) / 2;
        case MsdMetric::closest_k:
            return k;
    }
    return 1;
}

/// Metric value, or nothing when the outcome has fewer than j centers.
inline std::optional<double> evaluate_metric(const Instance& inst, const Outcome& outcome, MsdMetric metric,
                                             bool squared = true) {
    const std::size_t j = msd_depth(metric, inst.k());
    if (j > outcome.size()) return std::nullopt;
    return msd_j(inst, outcome, j, squared);
}

enum class Algorithm { prf, kmeanspp, greedy };

inline std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::prf:
            return "prf";
        case Algorithm::kmeanspp:
            return "kmeanspp";
        case Algorithm::greedy:
            return "greedy";
    }
    return "unknown";
}

inline Algorithm algorithm_from_string(std::string_view name) {
    if (name == "prf") return Algorithm::prf;
    if (name == "kmeanspp") return Algorithm::kmeanspp;
    if (name == "greedy") return Algorithm::greedy;
    throw InputError("unknown algorithm '" + std::string{name} + "'");
}

struct Dataset {
    std::string name;
    Instance    instance;  // k is ignored; the grid sets it
};

struct ExperimentGrid {
    std::vector<Dataset>       datasets;
    std::vector<Algorithm>     algorithms{Algorithm::prf, Algorithm::kmeanspp, Algorithm::greedy};
    std::size_t                k_min{1};
    std::size_t                k_max{100};
    std::vector<MsdMetric>     metrics{MsdMetric::closest_one, MsdMetric::closest_half_k, MsdMetric::closest_k};
    std::vector<std::uint64_t> seeds{1};
    bool                       pad_greedy{true};
    bool                       squared{true};
};

struct ResultRow {
    std::string           dataset;
    Algorithm             algorithm{Algorithm::prf};
    std::size_t           k{1};
    std::uint64_t         seed{0};
    MsdMetric             metric{MsdMetric::closest_one};
    std::optional<double> value;
};

/// Mean of one (dataset, algorithm, metric) series over k and seeds, and its relative
/// difference to k-means++ on the same series: (alg - kmeanspp) / kmeanspp * 100.
struct ResultSummary {
    std::string           dataset;
    Algorithm             algorithm{Algorithm::prf};
    MsdMetric             metric{MsdMetric::closest_one};
    double                mean{0.0};
    std::size_t           count{0};
    std::optional<double> percent_vs_kmeanspp;
};

struct ResultTable {
    std::vector<ResultRow> rows;

    [[nodiscard]] std::vector<ResultSummary> summarize() const {
        using Key = std::tuple<std::string, Algorithm, MsdMetric>;
        std::map<Key, std::pair<double, std::size_t>> sums;
        std::vector<Key>                              order;
        for (const auto& row : rows) {
            const Key key{row.dataset, row.algorithm, row.metric};
            auto [it, inserted] = sums.try_emplace(key, 0.0, 0);
            if (inserted) order.push_back(key);
            if (row.value) {
                it->second.first += *row.value;
                ++it->second.second;
            }
        }
        std::vector<ResultSummary> out;
        for (const auto& key : order) {
            const auto& [sum, count] = sums.at(key);
            ResultSummary summary{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                                  count == 0 ? 0.0 : sum / static_cast<double>(count), count, std::nullopt};
            const auto baseline = sums.find(Key{std::get<0>(key), Algorithm::kmeanspp, std::get<2>(key)});
            if (count > 0 && baseline != sums.end() && baseline->second.second > 0) {
                const double base = baseline->second.first / static_cast<double>(baseline->second.second);
                if (base != 0.0) summary.percent_vs_kmeanspp = (summary.mean - base) / base * 100.0;
            }
            out.push_back(summary);
        }
        return out;
    }
};

/// Outcome of one algorithm on one instance. PRF and Greedy Capture ignore the seed.
inline Outcome run_algorithm(const Instance& inst, Algorithm algorithm, std::uint64_t seed, bool pad_greedy) {
    switch (algorithm) {
        case Algorithm::prf:
            return select_prf_centers(inst).outcome;
        case Algorithm::kmeanspp:
            return kmeanspp(inst, seed);
        case Algorithm::greedy:
            return greedy_capture(inst, pad_greedy).outcome;
    }
    throw std::logic_error("unhandled algorithm");
}

/// Evaluates every (dataset, algorithm, k, seed) cell once. Rows are ordered by dataset,
/// algorithm, k, seed, metric. Seed-independent algorithms run once per k and their result
/// is reported under every seed.
inline ResultTable run_experiment(const ExperimentGrid& grid) {
    if (grid.k_min == 0 || grid.k_min > grid.k_max) {
        throw InputError("k range must satisfy 1 <= k_min <= k_max");
    }
    if (grid.seeds.empty()) {
        throw InputError("experiment needs at least one seed");
    }
    ResultTable table;
    for (const auto& dataset : grid.datasets) {
        if (grid.k_max > dataset.instance.n()) {
            throw InputError("dataset '" + dataset.name + "' has " + std::to_string(dataset.instance.n()) +
                             " points, fewer than k_max=" + std::to_string(grid.k_max));
        }
        for (const Algorithm algorithm : grid.algorithms) {
            for (std::size_t k = grid.k_min; k <= grid.k_max; ++k) {
                const Instance         inst = dataset.instance.with_k(k);
                std::optional<Outcome> shared;
                for (const std::uint64_t seed : grid.seeds) {
                    Outcome outcome;
                    if (algorithm == Algorithm::kmeanspp) {
                        outcome = run_algorithm(inst, algorithm, seed, grid.pad_greedy);
                    } else {
                        if (!shared) shared = run_algorithm(inst, algorithm, seed, grid.pad_greedy);
                        outcome = *shared;
                    }
                    for (const MsdMetric metric : grid.metrics) {
                        table.rows.push_back(ResultRow{dataset.name, algorithm, k, seed, metric,
                                                       evaluate_metric(inst, outcome, metric, grid.squared)});
                    }
                }
            }
        }
    }
    return table;
}

}  // namespace prfair
