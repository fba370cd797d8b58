// Copyright 2026 The typical-worlds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "typical/bb84.hpp"
#include "typical/error.hpp"
#include "typical/measure.hpp"
#include "typical/scenarios.hpp"

namespace typical::measure {
namespace {

FiniteProbabilitySpace fair() { return FiniteProbabilitySpace::coin(0.5); }

TEST(Space, Validation) {
    EXPECT_THROW(FiniteProbabilitySpace::from_names({"a", "b"}, {0.5, 0.6}), InvalidArgument);
    EXPECT_THROW(FiniteProbabilitySpace::from_names({"a", "a"}, {0.5, 0.5}), InvalidArgument);
    EXPECT_THROW(FiniteProbabilitySpace::from_names({"a", "b"}, {1.5, -0.5}), InvalidArgument);
    EXPECT_THROW(FiniteProbabilitySpace({{"a"}, {"b", "c"}}, {0.5, 0.5}), InvalidArgument);
    EXPECT_NO_THROW(FiniteProbabilitySpace::from_names({"a", "b"}, {1.0, 0.0}));
}

TEST(Space, SupportDropsZeroSymbols) {
    const auto p = FiniteProbabilitySpace::from_names({"a", "b", "c"}, {0.5, 0.0, 0.5});
    const auto s = p.support();
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.symbol(1).front(), "c");
}

TEST(Cylinder, EmptyStringHasMeasureOne) {
    EXPECT_DOUBLE_EQ(cylinder_prob(fair(), std::string_view("")), 1.0);
}

TEST(Cylinder, ProductFormula) {
    const auto p = FiniteProbabilitySpace::coin(0.75);
    EXPECT_NEAR(cylinder_prob(p, std::string_view("011")), 0.140625, 1e-15);
}

TEST(Cylinder, SingleBB84Tuple) {
    const auto d = scenarios::distribution(scenarios::bb84_scenario(0.5, false), false);
    const std::uint32_t i = d.space.index_of(Symbol{"0", "1", "1", "0", "0"});
    const std::uint32_t sigma[] = {i};
    EXPECT_NEAR(cylinder_prob(d.space, sigma), 0.0625, 1e-15);
}

TEST(PrefixSets, ReductionAndMeasure) {
    const auto s = PrefixSet::parse(fair(), {"0", "01", "11"});
    EXPECT_EQ(s.prefix_free_reduce().words().size(), 2u);
    EXPECT_NEAR(open_set_measure(fair(), s), 0.75, 1e-15);
    EXPECT_NEAR(open_set_measure(fair(), PrefixSet::parse(fair(), {"00", "010"})), 0.375, 1e-15);
    EXPECT_NEAR(open_set_measure(fair(), PrefixSet::parse(fair(), {""})), 1.0, 1e-15);
}

TEST(PrefixSets, BernoulliRepIsConsistent) {
    const BernoulliRep r(FiniteProbabilitySpace::from_names({"a", "b", "c"}, {0.2, 0.3, 0.5}));
    EXPECT_LT(consistency_defect(r, 6), 1e-14);
    const PrefixSet s = PrefixSet::parse(r.space(), {"a", "ba"});
    EXPECT_NEAR(induced_measure(r, s), 0.2 + 0.3 * 0.2, 1e-15);
}

TEST(MLTests, FixturesAcceptAndRejectExactly) {
    EXPECT_TRUE(verify_test_level({2, PrefixSet::parse(fair(), {"000"})}, fair()));
    EXPECT_FALSE(verify_test_level({2, PrefixSet::parse(fair(), {"00", "010"})}, fair()));
    EXPECT_TRUE(verify_test_level({1, PrefixSet()}, FiniteProbabilitySpace::coin(0.9)));
    // Boundary: exactly 2^-n is not strictly below.
    EXPECT_FALSE(verify_test_level({2, PrefixSet::parse(fair(), {"00"})}, fair()));
}

TEST(Marginal, ProductFactorizes) {
    const auto p1 = FiniteProbabilitySpace::from_names({"x", "y"}, {0.3, 0.7});
    const auto p2 = FiniteProbabilitySpace::from_names({"u", "v", "w"}, {0.2, 0.2, 0.6});
    const FiniteProbabilitySpace factors[] = {p1, p2};
    const auto prod = product_space(factors);
    EXPECT_EQ(prod.size(), 6u);
    EXPECT_TRUE(approx_equal(marginal_space(prod, 0), p1));
    EXPECT_TRUE(approx_equal(marginal_space(prod, 1), p2));
    EXPECT_THROW(marginal_space(p1, 0), InvalidArgument);
}

TEST(Marginal, TwoFairCoinsAreUniformOnFour) {
    const FiniteProbabilitySpace factors[] = {fair(), fair()};
    const auto prod = product_space(factors);
    for (double p : prod.probs()) {
        EXPECT_DOUBLE_EQ(p, 0.25);
    }
}

TEST(Marginal, BB84Components) {
    const double p = 0.3;
    const auto eve = scenarios::distribution(scenarios::bb84_scenario(p, true), false).space;
    const std::size_t bcd[] = {1, 4, 6};
    const auto m = marginal_space(eve, bcd);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double want = 0.25 * (m.symbol(i)[2] == "1" ? p : 1.0 - p);
        EXPECT_NEAR(m.prob(i), want, 1e-12) << to_string(m.symbol(i));
    }
    const auto plain = scenarios::distribution(scenarios::bb84_scenario(p, false), false).space;
    const auto a = marginal_space(plain, 0);
    EXPECT_NEAR(a.prob(0), 0.5, 1e-12);
}

TEST(Conditional, UniformRestricted) {
    const auto u = FiniteProbabilitySpace::uniform({"0", "1", "2"});
    const auto c = conditional_space(u, u.event_of({{"0"}, {"1"}}));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_NEAR(c.prob(0), 0.5, 1e-15);
    EXPECT_THROW(conditional_space(u, Event::none(3)), InvalidArgument);
}

TEST(Conditional, BB84SharedRoundsAreCertain) {
    const auto p = scenarios::distribution(scenarios::bb84_scenario(0.5, false), false).space;
    const auto s = p.event([](const Symbol &t) { return t[1] == t[2] && t[4] == "0"; });
    const auto ps = conditional_space(p, s);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto &t = ps.symbol(i);
        EXPECT_NEAR(ps.prob(i), t[0] == t[3] ? 0.25 : 0.0, 1e-12) << to_string(t);
    }
}

TEST(Mixing, WholeAlphabetAndSharedEvent) {
    const auto u = FiniteProbabilitySpace::uniform({"0", "1", "2"});
    const auto m = mixing_space(u, Event::all(3));
    EXPECT_DOUBLE_EQ(m.prob(m.index_of("1")), 1.0);
    const auto p = scenarios::distribution(scenarios::bb84_scenario(0.5, false), false).space;
    const auto s = p.event([](const Symbol &t) { return t[1] == t[2] && t[4] == "0"; });
    EXPECT_NEAR(mixing_space(p, s).prob(1), 0.25, 1e-12);
}

TEST(Symbols, TextForms) {
    EXPECT_EQ(to_string(Symbol{"a"}), "a");
    EXPECT_EQ(to_string(Symbol{"0", "1"}), "(0,1)");
    EXPECT_THROW(fair().word("02"), InvalidArgument);
}

} // namespace
} // namespace typical::measure
