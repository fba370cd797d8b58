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

/**
 * @file
 * Statistical test battery used as a computable proxy for Martin-Löf
 * randomness of a finite prefix with respect to a reference space.
 *
 * Tests (all against the reference probabilities, not empirical ones):
 *   frequency        chi-square over symbol counts
 *   block-frequency  chi-square over counts in disjoint blocks of 8
 *   runs[a]          number of runs of the indicator of a, exact Bernoulli
 *                    mean and variance, normal approximation
 *   serial-pairs     chi-square over disjoint pairs
 * Each test passes when its p-value is at least alpha / (number of tests).
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "typical/worlds.hpp"

namespace typical::worlds {

inline constexpr double kBatteryAlpha = 1e-4;
inline constexpr std::size_t kMinBatteryLength = 1000;
inline constexpr std::size_t kBlockLength = 8;

struct TestResult {
    std::string name;
    double statistic = 0.0;
    double p_value = 0.0;
    bool passed = false;
};

struct BatteryReport {
    std::size_t n = 0;
    double alpha = kBatteryAlpha;
    /// alpha / tests.size()
    double per_test_threshold = 0.0;
    std::vector<TestResult> tests;
    bool passed = false;
};

/// Throws InvalidArgument when w is shorter than kMinBatteryLength.
BatteryReport statistical_battery(const WorldPrefix &w, const FiniteProbabilitySpace &p,
                                  double alpha = kBatteryAlpha);
inline BatteryReport statistical_battery(const WorldPrefix &w) {
    return statistical_battery(w, w.governing);
}

/// The individual battery members, usable on their own. Standalone results
/// are judged at kBatteryAlpha with no Bonferroni split.
TestResult frequency_test(const WorldPrefix &w, const FiniteProbabilitySpace &p);
TestResult block_frequency_test(const WorldPrefix &w, const FiniteProbabilitySpace &p);
TestResult runs_test(const WorldPrefix &w, const FiniteProbabilitySpace &p, const Symbol &a);
TestResult serial_pairs_test(const WorldPrefix &w, const FiniteProbabilitySpace &p);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);
/// Two-sided normal tail, P(|Z| >= |z|).
double normal_two_sided(double z);

} // namespace typical::worlds
