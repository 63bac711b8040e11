#include "prfair/axioms.hpp"
#include "prfair/io/generators.hpp"
#include "prfair/prf_engine.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <array>
#include <vector>

using namespace prfair;

namespace {

std::vector<Point> line(std::initializer_list<double> xs) {
    std::vector<Point> pts;
    for (const double x : xs) pts.push_back(Point{x});
    return pts;
}

}  // namespace

TEST(WeightedSupport, Examples) {
    const auto inst = Instance::unconstrained(line({0, 0, 5}), 1);
    SweepState state{inst};
    EXPECT_EQ(weighted_support(inst, 0, 0.0, state), Rational{2});
    EXPECT_EQ(weighted_support(inst, 2, 1.0, state), Rational{1});

    const auto far = Instance::discrete(line({0, 0}), line({10}), 1);
    SweepState far_state{far};
    EXPECT_EQ(weighted_support(far, 0, 1.0, far_state), Rational{0});

    state.set_weight(1, Rational(1, 2));
    EXPECT_EQ(weighted_support(inst, 0, 0.0, state), Rational(3, 2));
}

TEST(SweepState, QuotaAndWeightBounds) {
    const auto inst = io::generate("two_mass");
    SweepState state{inst};
    EXPECT_EQ(state.quota(), Rational{10});
    EXPECT_EQ(state.total_weight(), Rational{110});
    EXPECT_THROW(state.set_weight(0, Rational{-1}), std::logic_error);
    EXPECT_THROW(state.set_weight(0, Rational(3, 2)), std::logic_error);
    state.mark_selected(3);
    EXPECT_THROW(state.mark_selected(3), std::logic_error);
    EXPECT_FALSE(state.is_remaining(3));
}

TEST(ReduceWeights, Examples) {
    const auto two = Instance::unconstrained(line({0, 0}), 2);
    {
        SweepState                  state{two};
        const std::array<std::size_t, 2> order{0, 1};
        reduce_weights(state, order, Rational{1});
        EXPECT_EQ(state.weights(), (std::vector<Weight>{0, 1}));
    }
    {
        SweepState                  state{two};
        const std::array<std::size_t, 2> order{0, 1};
        reduce_weights(state, order, Rational(3, 2));
        EXPECT_EQ(state.weights(), (std::vector<Weight>{0, Rational(1, 2)}));
    }
    {
        const auto                  one = Instance::unconstrained(line({0}), 1);
        SweepState                  state{one};
        const std::array<std::size_t, 1> order{0};
        reduce_weights(state, order, Rational{1});
        EXPECT_EQ(state.weights(), (std::vector<Weight>{0}));
    }
    {
        SweepState                  state{two};
        const std::array<std::size_t, 1> order{1};
        EXPECT_THROW(reduce_weights(state, order, Rational{2}), std::logic_error);
    }
}

TEST(SupportersOf, OrderedByDistanceThenIndex) {
    const auto inst = Instance::discrete(line({2, 1, 0, 1, 9}), line({0}), 1);
    EXPECT_EQ(supporters_of(inst, 0, 2.0), (std::vector<std::size_t>{2, 1, 3, 0}));
}

TEST(SelectPrfCenters, ThreeAgentsTwoCoincident) {
    const auto sel = select_prf_centers(Instance::unconstrained(line({0, 0, 1}), 3));
    EXPECT_EQ(sel.outcome.indices(), (std::vector<std::size_t>{0, 1, 2}));
    ASSERT_EQ(sel.trace.rounds.size(), 3u);
    for (const auto& round : sel.trace.rounds) EXPECT_EQ(round.radius, 0.0);
    EXPECT_EQ(sel.trace.rounds[0].support, Rational{2});
    EXPECT_EQ(sel.trace.rounds[0].supporters, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(sel.trace.rounds[0].weight_after, (std::vector<Weight>{0, 1}));
    EXPECT_EQ(sel.trace.rounds[1].weight_after, (std::vector<Weight>{0, 0}));
    EXPECT_EQ(sel.trace.rounds[2].supporters, (std::vector<std::size_t>{2}));
}

TEST(SelectPrfCenters, TwoMassDeskScale) {
    const auto inst = io::generate("two_mass");
    const auto sel  = select_prf_centers(inst);
    std::vector<std::size_t> expected{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
    EXPECT_EQ(sel.outcome.indices(), expected);
    EXPECT_EQ(sel.trace.rounds.back().radius, 0.0);
    // the tenth selection at 0 ties with every candidate at 1 (support 10) and wins on index
    EXPECT_EQ(sel.trace.rounds[9].support, Rational{10});
    EXPECT_TRUE(check_up(inst, sel.outcome).satisfied);
}

TEST(SelectPrfCenters, SingleAgent) {
    const auto sel = select_prf_centers(Instance::unconstrained(line({4}), 1));
    EXPECT_EQ(sel.outcome.indices(), (std::vector<std::size_t>{0}));
}

TEST(SelectPrfCenters, DiscreteNeedsEnoughCandidates) {
    EXPECT_THROW((void)select_prf_centers(Instance::discrete(line({0, 1, 2}), line({0}), 2)), InputError);
}

TEST(SelectPrfCenters, DiscreteUsesLargerRadius) {
    // agent 1 alone fills the quota of candidate 2 at radius 0; agent 0 is served at 0.5
    const auto sel = select_prf_centers(Instance::discrete(line({0, 1}), line({0.5, 0.5, 1}), 2));
    EXPECT_EQ(sel.outcome.indices(), (std::vector<std::size_t>{2, 0}));
    EXPECT_EQ(sel.trace.rounds[0].radius, 0.0);
    EXPECT_EQ(sel.trace.rounds[1].radius, 0.5);
}

class EngineInvariants : public ::testing::TestWithParam<bool> {};

TEST_P(EngineInvariants, CountWeightsAndRadii) {
    SeededRng rng{GetParam() ? 21u : 22u};
    for (int trial = 0; trial < 150; ++trial) {
        const auto inst = fixtures::random_instance(rng, {1, 30, 8, 3, GetParam()});
        if (inst.num_candidates() < inst.k()) continue;
        const auto sel = select_prf_centers(inst);
        ASSERT_EQ(sel.outcome.size(), inst.k());
        EXPECT_NO_THROW(validate_outcome(inst, sel.outcome));

        const Rational quota{static_cast<std::int64_t>(inst.n()), static_cast<std::int64_t>(inst.k())};
        const auto     schedule = build_radius_schedule(inst);
        double         previous = -1.0;
        std::vector<Weight> weights(inst.n(), Weight{1});
        for (std::size_t t = 0; t < sel.trace.rounds.size(); ++t) {
            const auto& round = sel.trace.rounds[t];
            ASSERT_EQ(round.weight_after.size(), round.supporters.size());
            for (std::size_t pos = 0; pos < round.supporters.size(); ++pos) {
                EXPECT_EQ(round.weight_before[pos], weights[round.supporters[pos]]);
                weights[round.supporters[pos]] = round.weight_after[pos];
            }
            EXPECT_TRUE(schedule.contains(round.radius));
            EXPECT_GE(round.radius, previous);
            previous = round.radius;
            EXPECT_GE(round.support, quota);
            Rational total{0};
            for (const auto& w : weights) {
                EXPECT_GE(w, Rational{0});
                EXPECT_LE(w, Rational{1});
                total += w;
            }
            EXPECT_EQ(total, Rational{static_cast<std::int64_t>(inst.n())} -
                                 Rational{static_cast<std::int64_t>(t + 1)} * quota);
        }
    }
}

TEST_P(EngineInvariants, MatchesLiteralSweep) {
    SeededRng rng{GetParam() ? 31u : 32u};
    for (int trial = 0; trial < 150; ++trial) {
        const auto inst = fixtures::random_instance(rng, {1, 25, 6, 3, GetParam()});
        if (inst.num_candidates() < inst.k()) continue;
        const auto sel    = select_prf_centers(inst);
        const auto oracle = fixtures::naive_prf_sweep(inst);
        ASSERT_EQ(sel.outcome.indices(), oracle.selected);
        std::vector<Weight> weights(inst.n(), Weight{1});
        for (std::size_t t = 0; t < oracle.selected.size(); ++t) {
            const auto& round = sel.trace.rounds[t];
            EXPECT_EQ(round.radius, oracle.radii[t]);
            for (std::size_t pos = 0; pos < round.supporters.size(); ++pos) {
                weights[round.supporters[pos]] = round.weight_after[pos];
            }
            EXPECT_EQ(weights, oracle.weights_after_round[t]);
        }
    }
}

TEST_P(EngineInvariants, SatisfiesPrfAndUpOnSmallInstances) {
    SeededRng rng{GetParam() ? 41u : 42u};
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = fixtures::random_instance(rng, {1, 12, 5, 2, GetParam()});
        if (inst.num_candidates() < inst.k()) continue;
        const auto  sel = select_prf_centers(inst);
        CheckOptions exhaustive{CheckMode::exhaustive};
        if (GetParam()) {
            EXPECT_TRUE(check_prf_discrete(inst, sel.outcome, exhaustive).satisfied);
        } else {
            EXPECT_TRUE(check_prf_unconstrained(inst, sel.outcome, exhaustive).satisfied);
        }
        EXPECT_TRUE(check_up(inst, sel.outcome).satisfied);
    }
}

TEST_P(EngineInvariants, ScaleInvariant) {
    SeededRng rng{GetParam() ? 51u : 52u};
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = fixtures::random_instance(rng, {1, 25, 6, 3, GetParam()});
        if (inst.num_candidates() < inst.k()) continue;
        const auto base = select_prf_centers(inst).outcome;
        for (const double alpha : {0.5, 3.0, 1000.0}) {
            EXPECT_EQ(select_prf_centers(inst.scaled(alpha)).outcome, base);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Modes, EngineInvariants, ::testing::Values(false, true),
                         [](const auto& info) { return info.param ? "Discrete" : "Unconstrained"; });

TEST(SelectPrfCenters, ModeConsistency) {
    SeededRng rng{61};
    for (int trial = 0; trial < 80; ++trial) {
        const auto inst = fixtures::random_instance(rng, {1, 20, 6, 3, false});
        const auto as_discrete =
            Instance::discrete(inst.agents(), inst.agents(), inst.k(), inst.metric());
        EXPECT_EQ(select_prf_centers(inst).outcome, select_prf_centers(as_discrete).outcome);
    }
}

TEST(SelectPrfCenters, MatrixInstanceMatchesPointInstance) {
    SeededRng rng{71};
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = fixtures::random_instance(rng, {2, 15, 4, 3, false});
        const auto& d   = inst.distances();
        const auto from_matrix =
            Instance::unconstrained_from_matrix(DistanceMatrix{d.rows(), d.cols(), {d.values().begin(), d.values().end()}},
                                                inst.k());
        EXPECT_EQ(select_prf_centers(inst).outcome, select_prf_centers(from_matrix).outcome);
    }
}

TEST(SelectPrfCenters, TraceSupportersHoldQuota) {
    const auto inst = io::generate("three_circles");
    const auto sel  = select_prf_centers(inst);
    for (const auto& round : sel.trace.rounds) {
        const auto expected = supporters_of(inst, round.winner, round.radius);
        EXPECT_EQ(round.supporters, expected);
        Rational removed{0};
        for (std::size_t pos = 0; pos < round.supporters.size(); ++pos) {
            removed += round.weight_before[pos] - round.weight_after[pos];
        }
        EXPECT_EQ(removed, Rational(36, 3));
    }
}
