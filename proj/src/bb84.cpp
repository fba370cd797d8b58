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

#include "typical/bb84.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "typical/error.hpp"

namespace typical::scenarios {

namespace {

using linalg::Complex;

const Vector &plus() {
    static const Vector v = bb84_state(0, 1);
    return v;
}

Vector coin_state(double p) {
    Vector v(2);
    v[0] = std::sqrt(1.0 - p);
    v[1] = std::sqrt(p);
    return v;
}

// {|Psi_0b><Psi_0b|, |Psi_1b><Psi_1b|} with outcomes "0", "1".
MeasurementFamily basis_family(int b) {
    return MeasurementFamily({"0", "1"},
                             {linalg::projector(bb84_state(0, b)), linalg::projector(bb84_state(1, b))});
}

// Branches of a stage controlled by one binary outcome.
std::map<std::vector<std::string>, Operation> by_basis() {
    std::map<std::vector<std::string>, Operation> out;
    for (int b = 0; b < 2; ++b) {
        out.emplace(std::vector<std::string>{std::to_string(b)}, basis_family(b));
    }
    return out;
}

struct Columns {
    std::size_t a, b, c, m, d;
};

Columns columns(const FiniteProbabilitySpace &space, bool eve) {
    const std::size_t want = eve ? 7 : 5;
    if (space.arity() != want) {
        throw InvalidArgument("world is not over BB84 tuples (arity " +
                              std::to_string(space.arity()) + ", expected " +
                              std::to_string(want) + ")");
    }
    return eve ? Columns{0, 1, 4, 5, 6} : Columns{0, 1, 2, 3, 4};
}

} // namespace

Vector bb84_state(int a, int b) {
    Vector v(2);
    if (b == 0) {
        v[a] = 1.0;
        return v;
    }
    const double r = 1.0 / std::sqrt(2.0);
    v[0] = r;
    v[1] = a == 0 ? r : -r;
    return v;
}

Scenario bb84_scenario(double p, bool eve, std::uint64_t seed, std::size_t n) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidArgument("BB84 security parameter p must lie in (0,1), got " +
                              std::to_string(p));
    }
    // W_ab = |Psi_ab><0| + |Psi_{a'b}><1|, selected by Alice's outcomes.
    std::map<std::vector<std::string>, Operation> prepare;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const std::vector<Vector> cols = {bb84_state(a, b), bb84_state(1 - a, b)};
            prepare.emplace(std::vector<std::string>{std::to_string(a), std::to_string(b)},
                            Matrix::from_columns(cols));
        }
    }
    const auto coin = MeasurementFamily::computational(2);

    Scenario s;
    s.seed = seed;
    s.repetitions = n;
    std::vector<Vector> registers;
    if (!eve) {
        // Q1a, Q1b, Q2, Q3, Q5
        s.factors = {2, 2, 2, 2, 2};
        registers = {plus(), plus(), Vector::basis(2, 0), plus(), coin_state(p)};
        s.stages = {Stage::measure({0}, coin, "a"),
                    Stage::measure({1}, coin, "b"),
                    Stage::controlled({2}, {0, 1}, prepare, "W"),
                    Stage::measure({3}, coin, "c"),
                    Stage::controlled({2}, {3}, by_basis(), "m"),
                    Stage::measure({4}, coin, "d")};
    } else {
        // Q1a, Q1b, Q2, QE1, Q3, Q5
        s.factors = {2, 2, 2, 2, 2, 2};
        registers = {plus(), plus(), Vector::basis(2, 0), plus(), plus(), coin_state(p)};
        s.stages = {Stage::measure({0}, coin, "a"),
                    Stage::measure({1}, coin, "b"),
                    Stage::controlled({2}, {0, 1}, prepare, "W"),
                    Stage::measure({3}, coin, "e"),
                    Stage::controlled({2}, {3}, by_basis(), "f"),
                    Stage::measure({4}, coin, "c"),
                    Stage::controlled({2}, {5}, by_basis(), "m"),
                    Stage::measure({5}, coin, "d")};
    }
    Vector joint = registers.front();
    for (std::size_t k = 1; k < registers.size(); ++k) {
        joint = linalg::tensor_product(joint, registers[k]);
    }
    s.initial = PureState(std::move(joint));
    return s;
}

BB84Report bb84_postprocess(const WorldPrefix &world, double p, bool eve) {
    const Columns col = columns(world.governing, eve);
    BB84Report r;
    r.p = p;
    r.eve = eve;
    r.n = world.size();

    // Per-symbol classification, computed once over the alphabet.
    enum Kind : std::uint8_t { kSifted, kShared, kCheck };
    std::vector<Kind> kind(world.governing.size());
    std::vector<std::uint8_t> bit(world.governing.size());
    std::vector<bool> agree(world.governing.size());
    for (std::size_t i = 0; i < kind.size(); ++i) {
        const Symbol &t = world.governing.symbol(i);
        if (t[col.b] != t[col.c]) {
            kind[i] = kSifted;
        } else {
            kind[i] = t[col.d] == "0" ? kShared : kCheck;
        }
        bit[i] = t[col.a] == "1" ? 1 : 0;
        agree[i] = t[col.a] == t[col.m];
    }

    std::vector<std::uint32_t> beta;
    bool flag = false;
    for (std::size_t t = 0; t < world.size(); ++t) {
        const auto s = world.symbols[t];
        switch (kind[s]) {
        case kSifted:
            ++r.sifted_out;
            break;
        case kShared:
            ++r.shared_rounds;
            beta.push_back(bit[s]);
            if (flag) {
                ++r.quarantined_bits;
            } else {
                r.key.push_back(bit[s]);
                r.key_errors += agree[s] ? 0 : 1;
            }
            break;
        case kCheck:
            ++r.check_rounds;
            if (!agree[s]) {
                ++r.mismatches;
                if (!flag) {
                    flag = true;
                    r.flag_round = t + 1;
                }
            }
            break;
        }
    }
    if (flag) {
        // Step 6 of the next round discards everything obtained so far.
        r.discarded_bits = r.key.size();
        r.key.clear();
        r.key_errors = 0;
    }
    r.kept_key_bits = r.key.size();
    if (r.n > 0) {
        r.kept_key_rate = static_cast<double>(r.kept_key_bits) / static_cast<double>(r.n);
        r.shared_bit_rate = static_cast<double>(r.shared_rounds) / static_cast<double>(r.n);
    }
    if (r.check_rounds > 0) {
        r.detection_rate = static_cast<double>(r.mismatches) / static_cast<double>(r.check_rounds);
    }

    r.shared_stream = WorldPrefix{FiniteProbabilitySpace::coin(0.5), std::move(beta)};
    if (r.shared_stream.size() >= worlds::kMinBatteryLength) {
        r.battery = worlds::statistical_battery(r.shared_stream);
    }
    return r;
}

BB84Report bb84(double p, bool eve, std::uint64_t seed, std::size_t n, unsigned threads) {
    if (n == 0) {
        throw InvalidArgument("bb84 needs a positive round count");
    }
    const Scenario s = bb84_scenario(p, eve, seed, n);
    const RunResult res = run(s, n, threads);
    BB84Report r = bb84_postprocess(res.world, p, eve);
    r.seed = seed;

    const auto &space = res.exact.space;
    const Columns col = columns(space, eve);
    const auto shared = space.event([&](const Symbol &t) {
        return t[col.b] == t[col.c] && t[col.d] == "0";
    });
    const auto check = space.event([&](const Symbol &t) {
        return t[col.b] == t[col.c] && t[col.d] == "1";
    });
    r.exact_space = space;
    r.exact_shared_probability = space.prob(shared);
    r.exact_check_probability = space.prob(check);
    const auto given = measure::conditional_space(space, check);
    r.exact_detection_probability =
        given.prob(given.event([&](const Symbol &t) { return t[col.a] != t[col.m]; }));
    return r;
}

} // namespace typical::scenarios
