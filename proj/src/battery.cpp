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

#include "typical/battery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "typical/error.hpp"

namespace typical::worlds {

double chi_square_sf(double statistic, double dof) {
    if (!std::isfinite(statistic)) {
        return 0.0;
    }
    if (statistic <= 0.0) {
        return 1.0;
    }
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

double normal_two_sided(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

namespace {

// Maps prefix symbol indices onto reference indices.
std::vector<std::uint32_t> to_reference(const WorldPrefix &w, const FiniteProbabilitySpace &p) {
    std::vector<std::uint32_t> table(w.governing.size());
    for (std::uint32_t i = 0; i < w.governing.size(); ++i) {
        table[i] = p.index_of(w.governing.symbol(i));
    }
    std::vector<std::uint32_t> out;
    out.reserve(w.size());
    for (auto s : w.symbols) {
        out.push_back(table[s]);
    }
    return out;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pearson chi-square of observed counts against expected ones. Cells with
// zero expectation and nonzero count make the statistic infinite.
double pearson(const std::vector<double> &observed, const std::vector<double> &expected) {
    double chi = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] == 0.0) {
            if (observed[i] != 0.0) {
                return kInf;
            }
            continue;
        }
        const double d = observed[i] - expected[i];
        chi += d * d / expected[i];
    }
    return chi;
}

// Exact moments of the Pearson statistic for a multinomial with `trials`
// draws over cells with positive probabilities `cells`:
//   E X^2 = K - 1,  Var X^2 = 2(K-1) + (sum 1/p - K^2 - 2K + 2) / trials.
struct PearsonMoments {
    double mean = 0.0;
    double variance = 0.0;
    double min_expected = 0.0;
};

PearsonMoments pearson_moments(const std::vector<double> &cells, double trials) {
    double k = 0.0;
    double inv = 0.0;
    double min_p = 1.0;
    for (double q : cells) {
        if (q > 0.0) {
            k += 1.0;
            inv += 1.0 / q;
            min_p = std::min(min_p, q);
        }
    }
    return {k - 1.0, 2.0 * (k - 1.0) + (inv - k * k - 2.0 * k + 2.0) / trials, trials * min_p};
}

// Chi-square tail when every expected cell holds at least 5, otherwise a
// two-sided normal tail with the exact moments summed over `repeats`
// independent statistics.
double pearson_p_value(double statistic, const PearsonMoments &m, double repeats) {
    if (!std::isfinite(statistic)) {
        return 0.0;
    }
    if (m.mean <= 0.0) {
        return 1.0;
    }
    if (m.min_expected >= 5.0) {
        return chi_square_sf(statistic, m.mean * repeats);
    }
    const double var = m.variance * repeats;
    return var > 0.0 ? normal_two_sided((statistic - m.mean * repeats) / std::sqrt(var)) : 1.0;
}

TestResult frequency_test(const std::vector<std::uint32_t> &x, const FiniteProbabilitySpace &p) {
    const double n = static_cast<double>(x.size());
    std::vector<double> observed(p.size(), 0.0);
    std::vector<double> expected(p.size(), 0.0);
    for (auto s : x) {
        observed[s] += 1.0;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        expected[i] = n * p.prob(i);
    }
    TestResult r{"frequency", pearson(observed, expected), 1.0, false};
    r.p_value = pearson_p_value(r.statistic, pearson_moments(p.probs(), n), 1.0);
    return r;
}

TestResult block_frequency_test(const std::vector<std::uint32_t> &x,
                                const FiniteProbabilitySpace &p) {
    const std::size_t blocks = x.size() / kBlockLength;
    const double m = static_cast<double>(kBlockLength);
    double chi = 0.0;
    std::vector<double> observed(p.size());
    std::vector<double> expected(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        expected[i] = m * p.prob(i);
    }
    for (std::size_t b = 0; b < blocks && std::isfinite(chi); ++b) {
        std::fill(observed.begin(), observed.end(), 0.0);
        for (std::size_t j = 0; j < kBlockLength; ++j) {
            observed[x[b * kBlockLength + j]] += 1.0;
        }
        chi += pearson(observed, expected);
    }
    TestResult r{"block-frequency", chi, 1.0, false};
    r.p_value = pearson_p_value(chi, pearson_moments(p.probs(), m), static_cast<double>(blocks));
    return r;
}

// Runs of the indicator sequence [x_i == a] under i.i.d. Bernoulli(q).
// V = 1 + sum_{i<n} [I_i != I_{i+1}]; with r = 2q(1-q):
//   E V   = 1 + (n-1) r
//   Var V = (n-1) r (1-r) + 2 (n-2) (q(1-q) - r^2)
TestResult runs_test(const std::vector<std::uint32_t> &x, std::uint32_t a, double q,
                     const std::string &label) {
    const double n = static_cast<double>(x.size());
    double runs = 1.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if ((x[i] == a) != (x[i - 1] == a)) {
            runs += 1.0;
        }
    }
    const double r = 2.0 * q * (1.0 - q);
    const double mean = 1.0 + (n - 1.0) * r;
    const double var = (n - 1.0) * r * (1.0 - r) + 2.0 * (n - 2.0) * (q * (1.0 - q) - r * r);
    TestResult t{"runs[" + label + "]", 0.0, 1.0, false};
    t.statistic = var > 0.0 ? (runs - mean) / std::sqrt(var) : 0.0;
    t.p_value = normal_two_sided(t.statistic);
    return t;
}

TestResult serial_pairs_test(const std::vector<std::uint32_t> &x,
                             const FiniteProbabilitySpace &p) {
    const std::size_t k = p.size();
    const std::size_t pairs = x.size() / 2;
    std::vector<double> observed(k * k, 0.0);
    std::vector<double> expected(k * k, 0.0);
    for (std::size_t i = 0; i < pairs; ++i) {
        observed[x[2 * i] * k + x[2 * i + 1]] += 1.0;
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            expected[a * k + b] = static_cast<double>(pairs) * p.prob(a) * p.prob(b);
        }
    }
    std::vector<double> cells;
    for (double e : expected) {
        cells.push_back(e / static_cast<double>(pairs));
    }
    TestResult r{"serial-pairs", pearson(observed, expected), 1.0, false};
    r.p_value = pearson_p_value(r.statistic, pearson_moments(cells, static_cast<double>(pairs)), 1.0);
    return r;
}

TestResult judged(TestResult r) {
    r.passed = r.p_value >= kBatteryAlpha;
    return r;
}

} // namespace

TestResult frequency_test(const WorldPrefix &w, const FiniteProbabilitySpace &p) {
    return judged(frequency_test(to_reference(w, p), p));
}

TestResult block_frequency_test(const WorldPrefix &w, const FiniteProbabilitySpace &p) {
    return judged(block_frequency_test(to_reference(w, p), p));
}

TestResult runs_test(const WorldPrefix &w, const FiniteProbabilitySpace &p, const Symbol &a) {
    const auto i = p.index_of(a);
    return judged(runs_test(to_reference(w, p), i, p.prob(i), measure::to_string(a)));
}

TestResult serial_pairs_test(const WorldPrefix &w, const FiniteProbabilitySpace &p) {
    return judged(serial_pairs_test(to_reference(w, p), p));
}

BatteryReport statistical_battery(const WorldPrefix &w, const FiniteProbabilitySpace &p,
                                  double alpha) {
    if (w.size() < kMinBatteryLength) {
        throw InvalidArgument("statistical battery needs at least " +
                              std::to_string(kMinBatteryLength) + " symbols, got " +
                              std::to_string(w.size()));
    }
    const auto x = to_reference(w, p);

    BatteryReport report;
    report.n = w.size();
    report.alpha = alpha;
    report.tests.push_back(frequency_test(x, p));
    report.tests.push_back(block_frequency_test(x, p));
    for (std::uint32_t a = 0; a < p.size(); ++a) {
        const double q = p.prob(a);
        if (q > 0.0 && q < 1.0) {
            report.tests.push_back(runs_test(x, a, q, measure::to_string(p.symbol(a))));
        }
    }
    report.tests.push_back(serial_pairs_test(x, p));

    report.per_test_threshold = alpha / static_cast<double>(report.tests.size());
    report.passed = true;
    for (auto &t : report.tests) {
        t.passed = t.p_value >= report.per_test_threshold;
        report.passed = report.passed && t.passed;
    }
    return report;
}

} // namespace typical::worlds
