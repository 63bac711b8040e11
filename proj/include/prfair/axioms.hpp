#pragma once

#include "prfair/core.hpp"
#include "prfair/random.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prfair {

enum class Axiom { up, prf_unconstrained, prf_discrete, prf2, prf3, pf, core };

inline std::string_view to_string(Axiom axiom) {
    switch (axiom) {
        case Axiom::up:
            return "UP";
        case Axiom::prf_unconstrained:
            return "PRF_UNC";
        case Axiom::prf_discrete:
            return "PRF_DISC";
        case Axiom::prf2:
            return "PRF2";
        case Axiom::prf3:
            return "PRF3";
        case Axiom::pf:
            return "PF";
        case Axiom::core:
            return "CORE";
    }
    return "UNKNOWN";
}

inline Axiom axiom_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "up") return Axiom::up;
    if (lower == "prf_unc") return Axiom::prf_unconstrained;
    if (lower == "prf_disc") return Axiom::prf_discrete;
    if (lower == "prf2") return Axiom::prf2;
    if (lower == "prf3") return Axiom::prf3;
    if (lower == "pf") return Axiom::pf;
    if (lower == "core") return Axiom::core;
    throw InputError("unknown axiom '" + std::string{name} + "'");
}

/// How subset-quantified axioms are decided.
///  - exhaustive: enumerate every agent subset (n <= 16).
///  - exact: clique search over agent-distance threshold graphs; unconstrained PRF only (n <= 64).
///  - sampling: nearest-neighbour balls plus random subsets. A reported violation is genuine,
///    "satisfied" only means none was found.
///  - automatic: the strongest definitive mode that fits, otherwise sampling.
enum class CheckMode { automatic, exhaustive, exact, sampling };

inline std::string_view to_string(CheckMode mode) {
    switch (mode) {
        case CheckMode::automatic:
            return "automatic";
        case CheckMode::exhaustive:
            return "exhaustive";
        case CheckMode::exact:
            return "exact";
        case CheckMode::sampling:
            return "sampling";
    }
    return "unknown";
}

inline constexpr std::size_t exhaustive_agent_limit = 16;
inline constexpr std::size_t exact_agent_limit      = 64;
inline constexpr std::size_t exact_outcome_limit    = 12;

struct CheckOptions {
    CheckMode     mode{CheckMode::automatic};
    std::uint64_t seed{0x5eedULL};
    std::size_t   random_subsets{2048};
};

/// Concrete violation. Which fields are meaningful depends on the axiom:
/// UP uses agents (the coincident group), radius (distance of the ell-th closest candidate), ell;
/// PF and CORE use agents and candidate; the PRF family uses agents, radius (y), ell.
struct Witness {
    std::vector<std::size_t>   agents;
    std::optional<std::size_t> candidate;
    std::optional<double>      radius;
    std::size_t                ell{0};
    std::size_t                required{0};
    std::size_t                observed{0};
    double                     improvement{0.0};
};

struct AxiomReport {
    Axiom                  axiom{Axiom::up};
    bool                   satisfied{true};
    bool                   definitive{true};
    CheckMode              mode{CheckMode::exhaustive};
    std::optional<Witness> witness;
};

namespace detail {

inline std::vector<std::size_t> members(std::uint64_t mask) {
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(std::popcount(mask)));
    while (mask != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

inline std::vector<double> distances_to_outcome(const Instance& inst, const Outcome& outcome) {
    std::vector<double> out(inst.n());
    for (std::size_t i = 0; i < inst.n(); ++i) {
        out[i] = distance_to_outcome(inst, i, outcome);
    }
    return out;
}

/// Largest ell with |S| >= ell * n / k.
inline std::size_t entitlement(std::size_t group_size, const Instance& inst) {
    return group_size * inst.k() / inst.n();
}

inline double diameter(const Instance& inst, std::span<const std::size_t> group) {
    double diam = 0.0;
    for (std::size_t a = 0; a < group.size(); ++a) {
        for (std::size_t b = a + 1; b < group.size(); ++b) {
            diam = std::max(diam, inst.agent_distance(group[a], group[b]));
        }
    }
    return diam;
}

/// |{c in X : some agent of S within y of c}|
inline std::size_t covered_count(const Instance& inst, const Outcome& outcome, std::span<const std::size_t> group,
                                 double y) {
    std::size_t count = 0;
    for (const std::size_t c : outcome) {
        for (const std::size_t i : group) {
            if (inst.distance(i, c) <= y) {
                ++count;
                break;
            }
        }
    }
    return count;
}

inline void require_exhaustive_size(const Instance& inst, Axiom axiom) {
    if (inst.n() > exhaustive_agent_limit) {
        throw InputError("exhaustive " + std::string{to_string(axiom)} + " check supports n <= " +
                         std::to_string(exhaustive_agent_limit) + " (n=" + std::to_string(inst.n()) + ")");
    }
}

inline AxiomReport satisfied_report(Axiom axiom, CheckMode mode, bool definitive = true) {
    return AxiomReport{axiom, true, definitive, mode, std::nullopt};
}

inline AxiomReport violated_report(Axiom axiom, CheckMode mode, Witness witness) {
    return AxiomReport{axiom, false, true, mode, std::move(witness)};
}

/// Branch and bound clique search with greedy colouring bounds over 64-bit adjacency sets.
class CliqueFinder {
  public:
    explicit CliqueFinder(std::span<const std::uint64_t> adjacency) : adjacency_{adjacency} {}

    /// Some clique of at least `target` vertices inside `vertices`, if one exists.
    std::optional<std::uint64_t> find(std::uint64_t vertices, std::size_t target) {
        target_ = target;
        if (target == 0) return std::uint64_t{0};
        if (static_cast<std::size_t>(std::popcount(vertices)) < target) return std::nullopt;
        found_ = 0;
        if (expand(0, 0, vertices)) return found_;
        return std::nullopt;
    }

  private:
    bool expand(std::uint64_t clique, std::size_t size, std::uint64_t pool) {
        std::array<int, 64>         order{};
        std::array<std::size_t, 64> colour{};
        std::size_t                 count     = 0;
        std::size_t                 colours   = 0;
        std::uint64_t               uncoloured = pool;
        while (uncoloured != 0) {
            ++colours;
            std::uint64_t available = uncoloured;
            while (available != 0) {
                const int v = std::countr_zero(available);
                available &= ~(std::uint64_t{1} << v);
                available &= ~adjacency_[static_cast<std::size_t>(v)];
                uncoloured &= ~(std::uint64_t{1} << v);
                order[count]  = v;
                colour[count] = colours;
                ++count;
            }
        }
        for (std::size_t pos = count; pos-- > 0;) {
            if (size + colour[pos] < target_) return false;
            const int           v    = order[pos];
            const std::uint64_t grown = clique | (std::uint64_t{1} << v);
            if (size + 1 >= target_) {
                found_ = grown;
                return true;
            }
            if (expand(grown, size + 1, pool & adjacency_[static_cast<std::size_t>(v)])) return true;
            pool &= ~(std::uint64_t{1} << v);
        }
        return false;
    }

    std::span<const std::uint64_t> adjacency_;
    std::size_t                    target_{0};
    std::uint64_t                  found_{0};
};

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Literal evaluation of the subset-quantified definitions for one agent group. These are the
// building blocks of the exhaustive and sampling checkers and of witness re-verification.
// ---------------------------------------------------------------------------------------------

/// Unconstrained PRF for one group S: with y = diam(S) and ell = floor(|S| k / n), at least ell
/// selected centers must lie within y of some member.
inline std::optional<Witness> prf_unconstrained_violation(const Instance& inst, const Outcome& outcome,
                                                          std::span<const std::size_t> group) {
    const std::size_t ell = detail::entitlement(group.size(), inst);
    if (ell == 0) return std::nullopt;
    const double      y        = detail::diameter(inst, group);
    const std::size_t observed = detail::covered_count(inst, outcome, group, y);
    if (observed >= ell) return std::nullopt;
    return Witness{{group.begin(), group.end()}, std::nullopt, y, ell, ell, observed, 0.0};
}

/// Discrete PRF family for one group S. For every radius y at which the number of candidates
/// within y of all of S grows, the demand is ell' = min(ell, that number); the variants differ
/// in which selected centers count toward it:
///   prf_discrete: centers within y of some member,
///   prf2:         centers within y of one single member (best member),
///   prf3:         centers within y of every member.
inline std::optional<Witness> prf_discrete_violation(const Instance& inst, const Outcome& outcome,
                                                     std::span<const std::size_t> group, Axiom variant) {
    const std::size_t ell = detail::entitlement(group.size(), inst);
    if (ell == 0 || group.empty()) return std::nullopt;
    const std::size_t m = inst.num_candidates();

    std::vector<double> farthest(m, 0.0);
    for (std::size_t c = 0; c < m; ++c) {
        for (const std::size_t i : group) farthest[c] = std::max(farthest[c], inst.distance(i, c));
    }
    std::vector<double> radii = farthest;
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    for (const double y : radii) {
        const auto common =
            static_cast<std::size_t>(std::count_if(farthest.begin(), farthest.end(), [y](double d) { return d <= y; }));
        const std::size_t required = std::min(ell, common);
        std::size_t       observed = 0;
        switch (variant) {
            case Axiom::prf_discrete:
                observed = detail::covered_count(inst, outcome, group, y);
                break;
            case Axiom::prf2:
                for (const std::size_t i : group) {
                    const auto mine = static_cast<std::size_t>(std::count_if(
                        outcome.begin(), outcome.end(), [&](std::size_t c) { return inst.distance(i, c) <= y; }));
                    observed = std::max(observed, mine);
                }
                break;
            case Axiom::prf3:
                for (const std::size_t c : outcome) {
                    if (farthest[c] <= y) ++observed;
                }
                break;
            default:
                throw std::logic_error("not a discrete PRF variant");
        }
        if (observed < required) {
            return Witness{{group.begin(), group.end()}, std::nullopt, y, ell, required, observed, 0.0};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// Unanimous proportionality, proportional fairness, core
// ---------------------------------------------------------------------------------------------

/// Every group of >= ell * ceil(n/k) coincident agents at x must have at least ell selected
/// centers within the distance of the ell-th closest candidate to x. The witness reports the
/// first violating group and the largest ell it is short on.
inline AxiomReport check_up(const Instance& inst, const Outcome& outcome) {
    validate_outcome(inst, outcome);
    const std::size_t n     = inst.n();
    const std::size_t quota = ceil_div(n, inst.k());

    std::vector<std::size_t>              representatives;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        bool placed = false;
        for (std::size_t g = 0; g < representatives.size(); ++g) {
            if (inst.same_location(representatives[g], i)) {
                groups[g].push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            representatives.push_back(i);
            groups.push_back({i});
        }
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::size_t max_ell = std::min({groups[g].size() / quota, inst.k(), inst.num_candidates()});
        if (max_ell == 0) continue;
        const auto          row = inst.distances().row(representatives[g]);
        std::vector<double> sorted(row.begin(), row.end());
        std::sort(sorted.begin(), sorted.end());

        std::optional<Witness> worst;
        for (std::size_t ell = 1; ell <= max_ell; ++ell) {
            const double      threshold = sorted[ell - 1];
            const std::size_t observed  = static_cast<std::size_t>(std::count_if(
                outcome.begin(), outcome.end(), [&](std::size_t c) { return row[c] <= threshold; }));
            if (observed < ell) {
                worst = Witness{groups[g], std::nullopt, threshold, ell, ell, observed, 0.0};
            }
        }
        if (worst) return detail::violated_report(Axiom::up, CheckMode::exhaustive, std::move(*worst));
    }
    return detail::satisfied_report(Axiom::up, CheckMode::exhaustive);
}

/// Proportional fairness: no candidate c is strictly closer than X for ceil(n/k) agents.
/// The maximal blocking set for c is {i : d(i,c) < d(i,X)}, so one pass per candidate decides it.
inline AxiomReport check_pf(const Instance& inst, const Outcome& outcome) {
    validate_outcome(inst, outcome);
    const std::size_t quota = ceil_div(inst.n(), inst.k());
    const auto        to_x  = detail::distances_to_outcome(inst, outcome);
    for (std::size_t c = 0; c < inst.num_candidates(); ++c) {
        std::vector<std::size_t> blocking;
        for (std::size_t i = 0; i < inst.n(); ++i) {
            if (inst.distance(i, c) < to_x[i]) blocking.push_back(i);
        }
        if (blocking.size() >= quota) {
            const std::size_t size = blocking.size();
            return detail::violated_report(Axiom::pf, CheckMode::exhaustive,
                                           Witness{std::move(blocking), c, std::nullopt, 1, quota, size, 0.0});
        }
    }
    return detail::satisfied_report(Axiom::pf, CheckMode::exhaustive);
}

/// Subset-enumeration form of proportional fairness (n <= 16). Candidates are scanned in index
/// order, subsets in increasing bitmask order.
inline AxiomReport check_pf_bruteforce(const Instance& inst, const Outcome& outcome) {
    validate_outcome(inst, outcome);
    detail::require_exhaustive_size(inst, Axiom::pf);
    const std::size_t   n     = inst.n();
    const std::size_t   quota = ceil_div(n, inst.k());
    const auto          to_x  = detail::distances_to_outcome(inst, outcome);
    const std::uint32_t full  = (std::uint32_t{1} << n) - 1;
    for (std::size_t c = 0; c < inst.num_candidates(); ++c) {
        for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) < quota) continue;
            bool all_prefer = true;
            for (std::size_t i = 0; i < n && all_prefer; ++i) {
                if ((mask >> i & 1U) != 0 && !(inst.distance(i, c) < to_x[i])) all_prefer = false;
            }
            if (all_prefer) {
                auto group = detail::members(mask);
                return detail::violated_report(Axiom::pf, CheckMode::exhaustive,
                                               Witness{group, c, std::nullopt, 1, quota, group.size(), 0.0});
            }
        }
    }
    return detail::satisfied_report(Axiom::pf, CheckMode::exhaustive);
}

/// Aggregate comparisons in the core check treat improvements up to this amount as ties.
/// Proportional to the largest distance so verdicts do not depend on units.
inline double core_tolerance(const Instance& inst) {
    const auto values = inst.distances().values();
    const double largest = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    return 1e-9 * largest;
}

/// Core fairness: no group of >= ceil(n/k) agents and candidate c with
/// sum d(i,X) - sum d(i,c) > 0. For fixed c the best group of size s is the s agents with the
/// largest improvement, so prefix sums of the sorted improvements decide it.
inline AxiomReport check_core(const Instance& inst, const Outcome& outcome) {
    validate_outcome(inst, outcome);
    const std::size_t n         = inst.n();
    const std::size_t quota     = ceil_div(n, inst.k());
    const double      tolerance = core_tolerance(inst);
    const auto        to_x      = detail::distances_to_outcome(inst, outcome);

    std::vector<double>      gain(n);
    std::vector<std::size_t> order(n);
    for (std::size_t c = 0; c < inst.num_candidates(); ++c) {
        for (std::size_t i = 0; i < n; ++i) gain[i] = to_x[i] - inst.distance(i, c);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return gain[a] > gain[b] || (gain[a] == gain[b] && a < b); });
        double      prefix    = 0.0;
        double      best      = 0.0;
        std::size_t best_size = 0;
        for (std::size_t s = 1; s <= n; ++s) {
            prefix += gain[order[s - 1]];
            if (s >= quota && (best_size == 0 || prefix > best)) {
                best      = prefix;
                best_size = s;
            }
        }
        if (best_size != 0 && best > tolerance) {
            std::vector<std::size_t> group(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_size));
            std::sort(group.begin(), group.end());
            return detail::violated_report(Axiom::core, CheckMode::exhaustive,
                                           Witness{std::move(group), c, std::nullopt, 1, quota, best_size, best});
        }
    }
    return detail::satisfied_report(Axiom::core, CheckMode::exhaustive);
}

/// Subset-enumeration form of the core (n <= 16).
inline AxiomReport check_core_bruteforce(const Instance& inst, const Outcome& outcome) {
    validate_outcome(inst, outcome);
    detail::require_exhaustive_size(inst, Axiom::core);
    const std::size_t   n         = inst.n();
    const std::size_t   quota     = ceil_div(n, inst.k());
    const double        tolerance = core_tolerance(inst);
    const auto          to_x      = detail::distances_to_outcome(inst, outcome);
    const std::uint32_t full      = (std::uint32_t{1} << n) - 1;
    for (std::size_t c = 0; c < inst.num_candidates(); ++c) {
        for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) < quota) continue;
            double current = 0.0;
            double deviate = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if ((mask >> i & 1U) == 0) continue;
                current += to_x[i];
                deviate += inst.distance(i, c);
            }
            if (current - deviate > tolerance) {
                auto group = detail::members(mask);
                return detail::violated_report(
                    Axiom::core, CheckMode::exhaustive,
                    Witness{group, c, std::nullopt, 1, quota, group.size(), current - deviate});
            }
        }
    }
    return detail::satisfied_report(Axiom::core, CheckMode::exhaustive);
}

// ---------------------------------------------------------------------------------------------
// PRF checkers
// ---------------------------------------------------------------------------------------------

namespace detail {

/// Group families tried in sampling mode: the ceil(ell n / k) agents nearest to each agent
/// (and, for discrete checks, to each candidate) for every ell, plus random groups.
template <typename Visit>
bool for_each_sampled_group(const Instance& inst, const CheckOptions& options, bool around_candidates, Visit&& visit) {
    const std::size_t        n = inst.n();
    const std::size_t        k = inst.k();
    std::vector<std::size_t> order(n);

    auto nested_groups = [&](auto&& dist_to) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double da = dist_to(a);
            const double db = dist_to(b);
            return da < db || (da == db && a < b);
        });
        for (std::size_t ell = 1; ell <= k; ++ell) {
            const std::size_t size = ceil_div(ell * n, k);
            if (visit(std::span<const std::size_t>{order.data(), size})) return true;
        }
        return false;
    };

    for (std::size_t a = 0; a < n; ++a) {
        if (nested_groups([&](std::size_t j) { return inst.agent_distance(a, j); })) return true;
    }
    if (around_candidates) {
        for (std::size_t c = 0; c < inst.num_candidates(); ++c) {
            if (nested_groups([&](std::size_t j) { return inst.distance(j, c); })) return true;
        }
    }
    SeededRng                rng{options.seed};
    std::vector<std::size_t> pool(n);
    for (std::size_t draw = 0; draw < options.random_subsets; ++draw) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        const std::size_t ell  = 1 + rng.index(k);
        const std::size_t size = ceil_div(ell * n, k);
        for (std::size_t pos = 0; pos < size; ++pos) {
            std::swap(pool[pos], pool[pos + rng.index(n - pos)]);
        }
        std::vector<std::size_t> group(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(group.begin(), group.end());
        if (visit(std::span<const std::size_t>{group})) return true;
    }
    return false;
}

inline AxiomReport prf_unconstrained_exhaustive(const Instance& inst, const Outcome& outcome) {
    const std::size_t   n    = inst.n();
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<double> diam(std::size_t{full} + 1, 0.0);
    for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
        const auto          low  = static_cast<std::size_t>(std::countr_zero(mask));
        const std::uint32_t rest = mask & (mask - 1);
        double              d    = diam[rest];
        for (std::uint32_t r = rest; r != 0; r &= r - 1) {
            d = std::max(d, inst.agent_distance(low, static_cast<std::size_t>(std::countr_zero(r))));
        }
        diam[mask] = d;

        const std::size_t ell = entitlement(static_cast<std::size_t>(std::popcount(mask)), inst);
        if (ell == 0) continue;
        std::size_t observed = 0;
        for (const std::size_t c : outcome) {
            for (std::uint32_t r = mask; r != 0; r &= r - 1) {
                if (inst.distance(static_cast<std::size_t>(std::countr_zero(r)), c) <= d) {
                    ++observed;
                    break;
                }
            }
        }
        if (observed < ell) {
            return violated_report(Axiom::prf_unconstrained, CheckMode::exhaustive,
                                   Witness{members(mask), std::nullopt, d, ell, ell, observed, 0.0});
        }
    }
    return satisfied_report(Axiom::prf_unconstrained, CheckMode::exhaustive);
}

/// A violation exists iff for some agent distance y and some set T of selected centers with
/// |T| < k, the agents whose within-y centers all lie in T contain a clique of the y-threshold
/// graph with at least (|T|+1) n / k members. Any such clique S has diam(S) <= y, and shrinking
/// the radius to diam(S) only shrinks its covered set, so S is itself a witness.
inline AxiomReport prf_unconstrained_exact(const Instance& inst, const Outcome& outcome) {
    const std::size_t n = inst.n();
    const std::size_t k = inst.k();
    const std::size_t x = outcome.size();
    if (n > exact_agent_limit || x > exact_outcome_limit) {
        throw InputError("exact PRF check supports n <= " + std::to_string(exact_agent_limit) + " and |X| <= " +
                         std::to_string(exact_outcome_limit));
    }

    std::vector<double> agent_dist(n * n);
    std::vector<double> radii{0.0};
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            agent_dist[a * n + b] = inst.agent_distance(a, b);
            if (a < b) radii.push_back(agent_dist[a * n + b]);
        }
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    std::vector<std::uint64_t> adjacency(n);
    std::vector<std::uint32_t> covers(n);
    for (const double y : radii) {
        for (std::size_t a = 0; a < n; ++a) {
            std::uint64_t row = 0;
            for (std::size_t b = 0; b < n; ++b) {
                if (a != b && agent_dist[a * n + b] <= y) row |= std::uint64_t{1} << b;
            }
            adjacency[a]       = row;
            std::uint32_t mask = 0;
            for (std::size_t pos = 0; pos < x; ++pos) {
                if (inst.distance(a, outcome[pos]) <= y) mask |= std::uint32_t{1} << pos;
            }
            covers[a] = mask;
        }
        CliqueFinder finder{adjacency};
        for (std::uint32_t allowed = 0; allowed < (std::uint32_t{1} << x); ++allowed) {
            const auto used = static_cast<std::size_t>(std::popcount(allowed));
            if (used >= k) continue;
            const std::size_t need = ceil_div((used + 1) * n, k);
            std::uint64_t     pool = 0;
            for (std::size_t a = 0; a < n; ++a) {
                if ((covers[a] & ~allowed) == 0) pool |= std::uint64_t{1} << a;
            }
            if (const auto clique = finder.find(pool, need)) {
                const auto group   = members(*clique);
                auto       witness = prf_unconstrained_violation(inst, outcome, group);
                if (!witness) throw std::logic_error("clique witness failed re-verification");
                return violated_report(Axiom::prf_unconstrained, CheckMode::exact, std::move(*witness));
            }
        }
    }
    return satisfied_report(Axiom::prf_unconstrained, CheckMode::exact);
}

inline AxiomReport prf_discrete_exhaustive(const Instance& inst, const Outcome& outcome, Axiom variant) {
    const std::size_t        n    = inst.n();
    const std::uint32_t      full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
        if (entitlement(static_cast<std::size_t>(std::popcount(mask)), inst) == 0) continue;
        const auto group = members(mask);
        if (auto witness = prf_discrete_violation(inst, outcome, group, variant)) {
            return violated_report(variant, CheckMode::exhaustive, std::move(*witness));
        }
    }
    return satisfied_report(variant, CheckMode::exhaustive);
}

inline CheckMode resolve_mode(const Instance& inst, const Outcome& outcome, Axiom axiom, CheckMode requested) {
    if (requested != CheckMode::automatic) return requested;
    if (inst.n() <= exhaustive_agent_limit) return CheckMode::exhaustive;
    if (axiom == Axiom::prf_unconstrained && inst.n() <= exact_agent_limit && outcome.size() <= exact_outcome_limit) {
        return CheckMode::exact;
    }
    return CheckMode::sampling;
}

}  // namespace detail

/// PRF with centers anywhere: every group S of >= ell n / k agents with diameter y needs ell
/// selected centers within y of some member. Needs agent-to-agent distances.
inline AxiomReport check_prf_unconstrained(const Instance& inst, const Outcome& outcome,
                                           const CheckOptions& options = {}) {
    validate_outcome(inst, outcome);
    if (!inst.has_agent_distances()) {
        throw InputError("unconstrained PRF check needs agent-to-agent distances");
    }
    const CheckMode mode = detail::resolve_mode(inst, outcome, Axiom::prf_unconstrained, options.mode);
    switch (mode) {
        case CheckMode::exhaustive:
            detail::require_exhaustive_size(inst, Axiom::prf_unconstrained);
            return detail::prf_unconstrained_exhaustive(inst, outcome);
        case CheckMode::exact:
            return detail::prf_unconstrained_exact(inst, outcome);
        default:
            break;
    }
    std::optional<Witness> found;
    detail::for_each_sampled_group(inst, options, false, [&](std::span<const std::size_t> group) {
        found = prf_unconstrained_violation(inst, outcome, group);
        return found.has_value();
    });
    if (found) return detail::violated_report(Axiom::prf_unconstrained, CheckMode::sampling, std::move(*found));
    return detail::satisfied_report(Axiom::prf_unconstrained, CheckMode::sampling, false);
}

namespace detail {

inline AxiomReport check_discrete_family(const Instance& inst, const Outcome& outcome, Axiom variant,
                                         const CheckOptions& options) {
    validate_outcome(inst, outcome);
    CheckMode mode = resolve_mode(inst, outcome, variant, options.mode);
    if (mode == CheckMode::exact) mode = CheckMode::exhaustive;
    if (mode == CheckMode::exhaustive) {
        require_exhaustive_size(inst, variant);
        return prf_discrete_exhaustive(inst, outcome, variant);
    }
    std::optional<Witness> found;
    for_each_sampled_group(inst, options, true, [&](std::span<const std::size_t> group) {
        std::vector<std::size_t> sorted(group.begin(), group.end());
        std::sort(sorted.begin(), sorted.end());
        found = prf_discrete_violation(inst, outcome, sorted, variant);
        return found.has_value();
    });
    if (found) return violated_report(variant, CheckMode::sampling, std::move(*found));
    return satisfied_report(variant, CheckMode::sampling, false);
}

}  // namespace detail

/// PRF over a finite candidate set: a group of >= ell n / k agents with ell' candidates within
/// y of all members needs ell' = min(ell, #such candidates) selected centers within y of some member.
inline AxiomReport check_prf_discrete(const Instance& inst, const Outcome& outcome, const CheckOptions& options = {}) {
    return detail::check_discrete_family(inst, outcome, Axiom::prf_discrete, options);
}

/// PRF-II: as the discrete PRF, but a single member must see the ell' centers within y.
inline AxiomReport check_prf2(const Instance& inst, const Outcome& outcome, const CheckOptions& options = {}) {
    return detail::check_discrete_family(inst, outcome, Axiom::prf2, options);
}

/// PRF-III: the ell' centers must be within y of every member.
inline AxiomReport check_prf3(const Instance& inst, const Outcome& outcome, const CheckOptions& options = {}) {
    return detail::check_discrete_family(inst, outcome, Axiom::prf3, options);
}

inline AxiomReport check(const Instance& inst, const Outcome& outcome, Axiom axiom, const CheckOptions& options = {}) {
    switch (axiom) {
        case Axiom::up:
            return check_up(inst, outcome);
        case Axiom::pf:
            return check_pf(inst, outcome);
        case Axiom::core:
            return check_core(inst, outcome);
        case Axiom::prf_unconstrained:
            return check_prf_unconstrained(inst, outcome, options);
        case Axiom::prf_discrete:
            return check_prf_discrete(inst, outcome, options);
        case Axiom::prf2:
            return check_prf2(inst, outcome, options);
        case Axiom::prf3:
            return check_prf3(inst, outcome, options);
    }
    throw std::logic_error("unhandled axiom");
}

/// Re-derives a reported violation from the definition, using only the witness' group,
/// candidate, radius and ell. False when the report has no witness or the witness does not hold.
inline bool witness_is_violation(const Instance& inst, const Outcome& outcome, const AxiomReport& report) {
    if (!report.witness) return false;
    const Witness&    w     = *report.witness;
    const std::size_t n     = inst.n();
    const std::size_t quota = ceil_div(n, inst.k());
    if (w.agents.empty()) return false;
    for (const std::size_t i : w.agents) {
        if (i >= n) return false;
    }
    switch (report.axiom) {
        case Axiom::up: {
            for (const std::size_t i : w.agents) {
                if (!inst.same_location(w.agents.front(), i)) return false;
            }
            if (w.ell == 0 || w.agents.size() < w.ell * quota || !w.radius) return false;
            const auto          row = inst.distances().row(w.agents.front());
            std::vector<double> sorted(row.begin(), row.end());
            std::sort(sorted.begin(), sorted.end());
            if (w.ell > sorted.size() || sorted[w.ell - 1] != *w.radius) return false;
            const auto observed = std::count_if(outcome.begin(), outcome.end(),
                                                [&](std::size_t c) { return row[c] <= *w.radius; });
            return static_cast<std::size_t>(observed) < w.ell;
        }
        case Axiom::pf: {
            if (!w.candidate || w.agents.size() < quota) return false;
            return std::all_of(w.agents.begin(), w.agents.end(), [&](std::size_t i) {
                return inst.distance(i, *w.candidate) < distance_to_outcome(inst, i, outcome);
            });
        }
        case Axiom::core: {
            if (!w.candidate || w.agents.size() < quota) return false;
            double current = 0.0;
            double deviate = 0.0;
            for (const std::size_t i : w.agents) {
                current += distance_to_outcome(inst, i, outcome);
                deviate += inst.distance(i, *w.candidate);
            }
            return current - deviate > core_tolerance(inst);
        }
        case Axiom::prf_unconstrained:
            return prf_unconstrained_violation(inst, outcome, w.agents).has_value();
        case Axiom::prf_discrete:
        case Axiom::prf2:
        case Axiom::prf3:
            return prf_discrete_violation(inst, outcome, w.agents, report.axiom).has_value();
    }
    return false;
}

}  // namespace prfair
