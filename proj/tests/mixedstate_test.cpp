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

#include <cmath>

#include <gtest/gtest.h>

#include "typical/bb84.hpp"
#include "typical/error.hpp"
#include "typical/mixedstate.hpp"

namespace typical::mixedstate {
namespace {

using linalg::Complex;
using linalg::Vector;

PureState ket0() { return PureState(Vector{1.0, 0.0}, "0"); }
PureState ket1() { return PureState(Vector{0.0, 1.0}, "1"); }
PureState plus() { return PureState(Vector{1.0, 1.0}.normalized(), "+"); }

DensityMatrix half_identity() { return DensityMatrix(Complex(0.5) * Matrix::identity(2)); }

TEST(Density, ValidatesProperties) {
    EXPECT_THROW(DensityMatrix(Matrix{{1.0, 1.0}, {0.0, 0.0}}), InvariantViolation);
    EXPECT_THROW(DensityMatrix(Matrix::identity(2)), InvariantViolation);
    EXPECT_THROW(DensityMatrix(Matrix{{1.5, 0.0}, {0.0, -0.5}}), InvariantViolation);
    EXPECT_NEAR(half_identity().purity(), 0.5, 1e-15);
}

TEST(Density, SinglePureState) {
    const MixedState ms({ket0()}, FiniteProbabilitySpace::from_names({"0"}, {1.0}));
    EXPECT_LT(linalg::distance(density_of(ms).matrix(), ket0().density()), 1e-15);
}

TEST(Density, ZeroAndPlusMixture) {
    const MixedState ms({ket0(), plus()}, FiniteProbabilitySpace::from_names({"0", "+"}, {0.3, 0.7}));
    const Matrix want{{0.65, 0.35}, {0.35, 0.35}};
    EXPECT_LT(linalg::distance(density_of(ms).matrix(), want), 1e-15);
}

TEST(Density, LabelsMustMatchSpace) {
    EXPECT_THROW(MixedState({ket0(), plus()}, FiniteProbabilitySpace::from_names({"0", "x"}, {0.3, 0.7})),
                 InvalidArgument);
}

TEST(MeasurementSpace, MaximallyMixedAndEigenstate) {
    const auto z = quantum::MeasurementFamily::computational(2);
    const auto a = measurement_space(half_identity(), z);
    EXPECT_NEAR(a.prob(0), 0.5, 1e-15);
    const auto b = measurement_space(DensityMatrix(ket0().density()), z);
    EXPECT_NEAR(b.prob(0), 1.0, 1e-15);
    EXPECT_NEAR(b.prob(1), 0.0, 1e-15);
}

TEST(PostMeasurement, ProjectsAndWeighs) {
    const Matrix f0 = ket0().density();
    const auto a = post_measurement_mixed(half_identity(), f0);
    EXPECT_LT(linalg::distance(a.density.matrix(), f0), 1e-15);
    const auto b = post_measurement_mixed(DensityMatrix(plus().density()), f0);
    EXPECT_NEAR(b.weight, 0.5, 1e-15);
    EXPECT_LT(linalg::distance(b.density.matrix(), f0), 1e-15);
    EXPECT_THROW(post_measurement_mixed(DensityMatrix(ket1().density()), f0), InvalidArgument);
}

TEST(LabeledStream, SameVectorsMerge) {
    const auto p = FiniteProbabilitySpace::from_names({"a", "b", "c"}, {0.25, 0.25, 0.5});
    const auto w = worlds::sample_world(p, 3, 1000);
    const auto ms = from_labeled_stream(w, [](const measure::Symbol &s) {
        return s.front() == "c" ? PureState(Vector{0.0, 1.0}) : PureState(Vector{Complex(0, 1), 0.0});
    });
    ASSERT_EQ(ms.states().size(), 2u);
    EXPECT_NEAR(ms.space().prob(0), 0.5, 1e-15);
    ASSERT_TRUE(ms.stream());
    EXPECT_EQ(ms.stream()->size(), 1000u);
    EXPECT_LT(linalg::distance(density_of(ms).matrix(), half_identity().matrix()), 1e-15);
}

TEST(Independence, DistinctSeedsAreIndependent) {
    const auto fair = FiniteProbabilitySpace::coin(0.5);
    const WorldPrefix streams[] = {worlds::sample_world(fair, 1, 100000),
                                   worlds::sample_world(fair, 2, 100000)};
    const FiniteProbabilitySpace spaces[] = {fair, fair};
    const auto r = independence_test(streams, spaces);
    EXPECT_EQ(r.verdict, Verdict::independent);
    EXPECT_NEAR(r.diagonal_mass, 0.5, 0.01);
}

TEST(Independence, StreamWithItselfIsDependent) {
    const auto fair = FiniteProbabilitySpace::coin(0.5);
    const auto w = worlds::sample_world(fair, 1, 100000);
    const WorldPrefix streams[] = {w, w};
    const FiniteProbabilitySpace spaces[] = {fair, fair};
    const auto r = independence_test(streams, spaces);
    EXPECT_EQ(r.verdict, Verdict::dependent);
    EXPECT_DOUBLE_EQ(r.diagonal_mass, 1.0);
}

TEST(Independence, ShortStreamsAreInconclusive) {
    const auto fair = FiniteProbabilitySpace::coin(0.5);
    const WorldPrefix streams[] = {worlds::sample_world(fair, 1, 500),
                                   worlds::sample_world(fair, 2, 500)};
    const FiniteProbabilitySpace spaces[] = {fair, fair};
    EXPECT_EQ(independence_test(streams, spaces).verdict, Verdict::inconclusive);
}

MixedState fair_z(std::uint64_t seed, std::size_t n, double p1 = 0.5) {
    const auto space = FiniteProbabilitySpace::from_names({"0", "1"}, {1.0 - p1, p1});
    return MixedState({ket0(), ket1()}, space, worlds::sample_world(space, seed, n));
}

TEST(Tensor, IndependentFairStreamsGiveQuarterIdentity) {
    const auto t = tensor_mixed({fair_z(5, 100000), fair_z(6, 100000)});
    EXPECT_EQ(t.independence.verdict, Verdict::independent);
    const Matrix i4 = Complex(0.25) * Matrix::identity(4);
    EXPECT_LT(linalg::trace_distance(empirical_density(t.state).matrix(), i4), 0.01);
    EXPECT_EQ(t.state.states()[1].label(), "0⊗1");
}

TEST(Tensor, CorrelatedCopyIsNotTheProduct) {
    const double p1 = 0.5;
    const auto g = fair_z(9, 100000, p1);
    const auto t = tensor_mixed({g, g});
    EXPECT_EQ(t.independence.verdict, Verdict::dependent);
    const Matrix rho12 = density_of(t.state).matrix();
    const Matrix rho1 = density_of(g).matrix();
    const Matrix product = linalg::tensor_product(rho1, rho1);
    // Oracle: diag(0.5,0,0,0.5) against I/4 has trace distance 0.5.
    EXPECT_NEAR(linalg::trace_distance(rho12, product), 0.5, 0.01);
}

TEST(Tensor, SingleFactorUnchanged) {
    const auto g = fair_z(3, 2000);
    const auto t = tensor_mixed({g});
    EXPECT_EQ(t.state.stream()->symbols, g.stream()->symbols);
}

TEST(LinearIndependence, Fixtures) {
    const PureState a[] = {ket0(), ket1()};
    EXPECT_TRUE(pairwise_linear_independence(a));
    const PureState b[] = {ket0(), PureState(Vector{Complex(std::cos(0.3), std::sin(0.3)), 0.0})};
    EXPECT_FALSE(pairwise_linear_independence(b));
    std::vector<PureState> bb84;
    for (int a_ = 0; a_ < 2; ++a_) {
        for (int b_ = 0; b_ < 2; ++b_) {
            bb84.emplace_back(scenarios::bb84_state(a_, b_));
        }
    }
    EXPECT_TRUE(pairwise_linear_independence(bb84));
}

TEST(Mixture, Fixtures) {
    const std::pair<double, DensityMatrix> one[] = {{1.0, DensityMatrix(plus().density())}};
    EXPECT_LT(linalg::distance(mixture_density(one).matrix(), plus().density()), 1e-15);
    const std::pair<double, DensityMatrix> two[] = {{0.5, DensityMatrix(ket0().density())},
                                                    {0.5, DensityMatrix(ket1().density())}};
    EXPECT_LT(linalg::distance(mixture_density(two).matrix(), half_identity().matrix()), 1e-15);
    const std::pair<double, DensityMatrix> bad[] = {{0.7, DensityMatrix(ket0().density())}};
    EXPECT_THROW(mixture_density(bad), InvalidArgument);
}

} // namespace
} // namespace typical::mixedstate
