#pragma once

#include "prfair/core.hpp"
#include "prfair/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace prfair {

/// Agent weight during a sweep; always within [0, 1].
using Weight = Rational;

/// Audit record of one selection.
struct SweepRound {
    double                   radius{0.0};
    std::size_t              winner{0};
    Rational                 support;     // winner's weighted support at `radius`, before reweighting
    std::vector<std::size_t> supporters;  // agents within `radius` of the winner, in reduction order
    std::vector<Weight>      weight_before;  // weights of `supporters`, position by position
    std::vector<Weight>      weight_after;
};

struct SweepTrace {
    std::vector<SweepRound> rounds;
};

/// Mutable state of the radius sweep.
class SweepState {
  public:
    explicit SweepState(const Instance& inst)
      : quota_{static_cast<std::int64_t>(inst.n()), static_cast<std::int64_t>(inst.k())}
      , weights_(inst.n(), Weight{1})
      , remaining_(inst.num_candidates(), true) {}

    /// n/k as an exact rational.
    [[nodiscard]] const Rational& quota() const noexcept { return quota_; }
    [[nodiscard]] const std::vector<Weight>& weights() const noexcept { return weights_; }
    [[nodiscard]] const Weight& weight(std::size_t agent) const { return weights_[agent]; }
    [[nodiscard]] bool is_remaining(std::size_t candidate) const { return remaining_[candidate]; }
    [[nodiscard]] const Outcome& selected() const noexcept { return selected_; }
    [[nodiscard]] std::size_t radius_cursor() const noexcept { return cursor_; }

    [[nodiscard]] Rational total_weight() const {
        return std::accumulate(weights_.begin(), weights_.end(), Rational{0});
    }

    void mark_selected(std::size_t candidate) {
        if (!remaining_.at(candidate)) {
            throw std::logic_error("candidate " + std::to_string(candidate) + " already selected");
        }
        remaining_[candidate] = false;
        selected_.push_back(candidate);
    }

    void advance_radius() noexcept { ++cursor_; }

    void set_weight(std::size_t agent, Weight value) {
        if (value < Rational{0} || value > Rational{1}) {
            throw std::logic_error("agent weight left [0, 1]");
        }
        weights_[agent] = value;
    }

  private:
    Rational            quota_;
    std::vector<Weight> weights_;
    std::vector<bool>   remaining_;
    Outcome             selected_;
    std::size_t         cursor_{0};
};

/// Sum of weights of agents within `radius` of `candidate`.
inline Rational weighted_support(const Instance& inst, std::size_t candidate, double radius, const SweepState& state) {
    Rational sum{0};
    for (std::size_t i = 0; i < inst.n(); ++i) {
        if (inst.distance(i, candidate) <= radius) {
            sum += state.weight(i);
        }
    }
    return sum;
}

/// Agents within `radius` of `candidate`, ascending by (distance, agent index).
inline std::vector<std::size_t> supporters_of(const Instance& inst, std::size_t candidate, double radius) {
    std::vector<std::size_t> agents;
    for (std::size_t i = 0; i < inst.n(); ++i) {
        if (inst.distance(i, candidate) <= radius) {
            agents.push_back(i);
        }
    }
    std::sort(agents.begin(), agents.end(), [&](std::size_t a, std::size_t b) {
        const double da = inst.distance(a, candidate);
        const double db = inst.distance(b, candidate);
        return da < db || (da == db && a < b);
    });
    return agents;
}

/// Removes exactly `amount` of weight from `supporters`, zeroing them in the given order and
/// reducing the last one touched fractionally.
inline void reduce_weights(SweepState& state, std::span<const std::size_t> supporters, const Rational& amount) {
    Rational available{0};
    for (const std::size_t i : supporters) {
        available += state.weight(i);
    }
    if (available < amount) {
        throw std::logic_error("supporters hold " + to_string(available) + " weight, cannot remove " +
                               to_string(amount));
    }
    Rational left = amount;
    for (const std::size_t i : supporters) {
        if (left == Rational{0}) {
            break;
        }
        const Weight w = state.weight(i);
        if (w <= left) {
            state.set_weight(i, Weight{0});
            left -= w;
        } else {
            state.set_weight(i, w - left);
            left = Rational{0};
        }
    }
}

struct Selection {
    Outcome    outcome;
    SweepTrace trace;
};

/// Proportionally representative center selection by weighted radius sweep.
///
/// Every agent starts with weight 1. Radii are visited in increasing order; at each radius the
/// remaining candidate with the largest weighted support (ties to the lowest index) is selected
/// as long as that support reaches n/k, after which its supporters lose exactly n/k weight and
/// the same radius is examined again. Unconstrained instances sweep over the agents themselves.
///
/// Supports are maintained incrementally: a pair (agent, candidate) enters when the sweep
/// reaches its distance, and weight changes are pushed to every candidate already in range.
/// Only candidates whose support grew at the current radius need to be inspected before the
/// first selection there, since all others were below the quota at the previous radius.
inline Selection select_prf_centers(const Instance& inst) {
    const std::size_t n = inst.n();
    const std::size_t m = inst.num_candidates();
    const std::size_t k = inst.k();
    if (m < k) {
        throw InputError("insufficient candidates: " + std::to_string(m) + " candidates for k=" + std::to_string(k));
    }

    const RadiusSchedule schedule = build_radius_schedule(inst);
    SweepState           state{inst};
    const Rational       quota = state.quota();

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

    std::vector<Rational>    support(m, Rational{0});
    std::vector<std::size_t> touched;
    std::vector<char>        is_touched(m, 0);
    std::size_t              next_pair = 0;
    Selection                result;

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    auto                  consider = [&](std::size_t c, std::size_t best) {
        if (!state.is_remaining(c) || support[c] < quota) return best;
        if (best == none || support[c] > support[best] || (support[c] == support[best] && c < best)) return c;
        return best;
    };

    while (state.selected().size() < k) {
        if (state.radius_cursor() >= schedule.size()) {
            throw std::logic_error("radius schedule exhausted with " + std::to_string(state.selected().size()) +
                                   " of " + std::to_string(k) + " centers selected");
        }
        const double radius = schedule[state.radius_cursor()];

        touched.clear();
        for (; next_pair < pairs.size() && pairs[next_pair].dist <= radius; ++next_pair) {
            const auto& p = pairs[next_pair];
            support[p.candidate] += state.weight(p.agent);
            if (!is_touched[p.candidate]) {
                is_touched[p.candidate] = 1;
                touched.push_back(p.candidate);
            }
        }
        std::size_t best = none;
        for (const std::size_t c : touched) {
            is_touched[c] = 0;
            best          = consider(c, best);
        }

        while (best != none && state.selected().size() < k) {
            SweepRound round;
            round.radius     = radius;
            round.winner     = best;
            round.support    = support[best];
            round.supporters = supporters_of(inst, best, radius);
            for (const std::size_t i : round.supporters) {
                round.weight_before.push_back(state.weight(i));
            }

            state.mark_selected(best);
            reduce_weights(state, round.supporters, quota);

            for (std::size_t pos = 0; pos < round.supporters.size(); ++pos) {
                const std::size_t i     = round.supporters[pos];
                const Weight&     after = state.weight(i);
                round.weight_after.push_back(after);
                if (after == round.weight_before[pos]) continue;
                const Rational delta = after - round.weight_before[pos];
                for (std::size_t c = 0; c < m; ++c) {
                    if (inst.distance(i, c) <= radius) support[c] += delta;
                }
            }
            result.trace.rounds.push_back(std::move(round));

            best = none;
            for (std::size_t c = 0; c < m; ++c) {
                best = consider(c, best);
            }
        }
        if (state.selected().size() < k) {
            state.advance_radius();
        }
    }
    result.outcome = state.selected();
    return result;
}

}  // namespace prfair
