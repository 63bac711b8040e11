#pragma once

#include "prfair/core.hpp"
#include "prfair/random.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace prfair {

struct KMeansRun {
    Outcome             outcome;
    std::vector<double> objective;  // after seeding, then after every Lloyd step
    std::size_t         iterations{0};
    bool                converged{false};
};

namespace detail {

/// Sum over agents of the squared distance to the nearest center.
inline double kmeans_objective(const Instance& inst, const std::vector<std::size_t>& centers) {
    double total = 0.0;
    for (std::size_t i = 0; i < inst.n(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const std::size_t c : centers) best = std::min(best, inst.distance(i, c));
        total += best * best;
    }
    return total;
}

}  // namespace detail

/// k-means++ restricted to data points: D^2-weighted seeding followed by Lloyd iterations in
/// which each cluster moves to the member minimising the within-cluster sum of squared distances.
/// A data point that is itself a center always stays in its own cluster, so clusters never empty
/// and centers stay distinct.
inline KMeansRun kmeanspp_run(const Instance& inst, std::uint64_t seed, std::size_t max_iterations = 100) {
    if (!inst.is_unconstrained()) {
        throw InputError("k-means++ selects among data points and needs candidates equal to agents");
    }
    const std::size_t n = inst.n();
    const std::size_t k = inst.k();
    SeededRng         rng{seed};

    std::vector<std::size_t> centers;
    std::vector<bool>        is_center(n, false);
    std::vector<double>      nearest(n, std::numeric_limits<double>::infinity());
    auto                     add_center = [&](std::size_t c) {
        centers.push_back(c);
        is_center[c] = true;
        for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], inst.distance(i, c));
    };

    add_center(rng.index(n));
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += is_center[i] ? 0.0 : nearest[i] * nearest[i];
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double       cumulative = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (is_center[i] || nearest[i] == 0.0) continue;
                cumulative += nearest[i] * nearest[i];
                pick = i;
                if (cumulative > target) break;
            }
        } else {
            // every remaining point coincides with a center
            for (std::size_t i = 0; i < n && pick == n; ++i) {
                if (!is_center[i]) pick = i;
            }
        }
        add_center(pick);
    }

    KMeansRun run;
    run.objective.push_back(detail::kmeans_objective(inst, centers));
    std::vector<std::size_t> owner(n);
    for (; run.iterations < max_iterations; ++run.iterations) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            for (std::size_t pos = 0; pos < centers.size(); ++pos) {
                if (centers[pos] == i) {
                    best = pos;
                    break;
                }
                const double d  = inst.distance(i, centers[pos]);
                const double bd = inst.distance(i, centers[best]);
                if (d < bd || (d == bd && centers[pos] < centers[best])) best = pos;
            }
            owner[i] = best;
        }

        std::vector<std::vector<std::size_t>> clusters(centers.size());
        for (std::size_t i = 0; i < n; ++i) clusters[owner[i]].push_back(i);

        bool moved = false;
        for (std::size_t pos = 0; pos < centers.size(); ++pos) {
            const auto& members   = clusters[pos];
            std::size_t best      = centers[pos];
            double      best_cost = std::numeric_limits<double>::infinity();
            for (const std::size_t candidate : members) {
                double cost = 0.0;
                for (const std::size_t other : members) {
                    const double d = inst.agent_distance(candidate, other);
                    cost += d * d;
                }
                if (cost < best_cost || (cost == best_cost && candidate < best)) {
                    best_cost = cost;
                    best      = candidate;
                }
            }
            // keep the incumbent unless a member is strictly better
            double incumbent = 0.0;
            for (const std::size_t other : members) {
                const double d = inst.agent_distance(centers[pos], other);
                incumbent += d * d;
            }
            if (best != centers[pos] && best_cost < incumbent) {
                centers[pos] = best;
                moved        = true;
            }
        }
        run.objective.push_back(detail::kmeans_objective(inst, centers));
        if (!moved) {
            run.converged = true;
            break;
        }
    }
    run.outcome = Outcome{centers};
    return run;
}

inline Outcome kmeanspp(const Instance& inst, std::uint64_t seed) { return kmeanspp_run(inst, seed).outcome; }

struct GreedyCaptureResult {
    Outcome     outcome;
    std::size_t opened{0};       // centers opened by the sweep itself
    bool        underfilled{false};  // opened < k
    std::size_t padded{0};       // lowest-index candidates appended to reach k
};

/// Greedy Capture (ALG_g) over the radius schedule. At each radius opened centers first capture
/// every uncaptured agent in range; then, while some unopened candidate has at least ceil(n/k)
/// uncaptured agents in range, the one with the most (lowest index on ties) opens and captures
/// them. The sweep may open fewer than k centers; `pad` appends lowest-index unselected
/// candidates until there are k.
inline GreedyCaptureResult greedy_capture(const Instance& inst, bool pad = false) {
    const std::size_t n     = inst.n();
    const std::size_t m     = inst.num_candidates();
    const std::size_t k     = inst.k();
    const std::size_t quota = ceil_div(n, k);

    struct Pair {
        double        dist;
        std::uint32_t agent;
        std::uint32_t candidate;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < m; ++c) {
            pairs.push_back({inst.distance(i, c), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(c)});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.dist < b.dist; });

    std::vector<std::size_t> uncaptured_in_range(m, 0);
    std::vector<bool>        captured(n, false);
    std::vector<bool>        opened(m, false);
    std::size_t              remaining = n;
    Outcome                  outcome;

    auto capture = [&](std::size_t i, double radius) {
        captured[i] = true;
        --remaining;
        for (std::size_t c = 0; c < m; ++c) {
            if (inst.distance(i, c) <= radius) --uncaptured_in_range[c];
        }
    };

    std::vector<std::size_t> touched;
    std::size_t              next = 0;
    while (next < pairs.size() && remaining > 0 && outcome.size() < k) {
        const double radius = pairs[next].dist;
        touched.clear();
        std::vector<std::size_t> entering;
        for (; next < pairs.size() && pairs[next].dist == radius; ++next) {
            const auto& p = pairs[next];
            if (captured[p.agent]) continue;
            ++uncaptured_in_range[p.candidate];
            touched.push_back(p.candidate);
            if (opened[p.candidate]) entering.push_back(p.agent);
        }
        for (const std::size_t i : entering) {
            if (!captured[i]) capture(i, radius);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

        while (outcome.size() < k) {
            std::size_t best = m;
            for (const std::size_t c : touched) {
                if (opened[c] || uncaptured_in_range[c] < quota) continue;
                if (best == m || uncaptured_in_range[c] > uncaptured_in_range[best]) best = c;
            }
            if (best == m) break;
            opened[best] = true;
            outcome.push_back(best);
            for (std::size_t i = 0; i < n; ++i) {
                if (!captured[i] && inst.distance(i, best) <= radius) capture(i, radius);
            }
        }
    }

    GreedyCaptureResult result;
    result.opened      = outcome.size();
    result.underfilled = outcome.size() < k;
    if (pad) {
        for (std::size_t c = 0; c < m && outcome.size() < k; ++c) {
            if (!opened[c]) {
                outcome.push_back(c);
                ++result.padded;
            }
        }
    }
    result.outcome = std::move(outcome);
    return result;
}

}  // namespace prfair
