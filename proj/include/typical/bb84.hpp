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
 * BB84 with a security parameter p, with and without an intercept-resend
 * eavesdropper. Coins are qubit registers measured projectively; the
 * classical Steps 6-12 are replayed over a sampled world.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "typical/battery.hpp"
#include "typical/scenarios.hpp"

namespace typical::scenarios {

/// |Psi_ab>: |0>, |1> for b = 0 and |+>, |-> for b = 1.
Vector bb84_state(int a, int b);

/// Five qubits (a, b, c, m, d) without Eve; six qubits with Eve, whose
/// tuples are (a, b, e, f, c, m, d). Throws InvalidArgument unless 0 < p < 1.
Scenario bb84_scenario(double p, bool eve, std::uint64_t seed = 0, std::size_t n = 0);

struct BB84Report {
    double p = 0.0;
    bool eve = false;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    /// Exact quantities from the distribution.
    FiniteProbabilitySpace exact_space;
    double exact_shared_probability = 0.0;   ///< P(b = c, d = 0)
    double exact_check_probability = 0.0;    ///< P(b = c, d = 1)
    double exact_detection_probability = 0.0; ///< P(a != m | b = c, d = 1)

    /// Step outcome counts over the whole world.
    std::size_t sifted_out = 0;    ///< b != c
    std::size_t shared_rounds = 0; ///< b = c, d = 0
    std::size_t check_rounds = 0;  ///< b = c, d = 1
    std::size_t mismatches = 0;    ///< check rounds with a != m
    double shared_bit_rate = 0.0;  ///< shared_rounds / n
    double detection_rate = 0.0;   ///< mismatches / check_rounds

    /// Protocol replay.
    std::optional<std::size_t> flag_round; ///< 1-based round that set flag
    std::size_t kept_key_bits = 0;
    double kept_key_rate = 0.0;
    std::size_t key_errors = 0;       ///< kept bits with a != m
    std::size_t discarded_bits = 0;   ///< shared before the flag, dropped at Step 6
    std::size_t quarantined_bits = 0; ///< shared-type rounds after the flag
    std::vector<std::uint8_t> key;    ///< Alice's kept bits

    /// Alice's bits over every shared round (the stream beta), and its
    /// battery when long enough.
    worlds::WorldPrefix shared_stream;
    std::optional<worlds::BatteryReport> battery;
};

/// Classical Steps 6-12 over a world of BB84 tuples.
BB84Report bb84_postprocess(const WorldPrefix &world, double p, bool eve);

/// Builds the scenario, computes its distribution, samples n rounds and
/// post-processes them.
BB84Report bb84(double p, bool eve, std::uint64_t seed, std::size_t n, unsigned threads = 1);

} // namespace typical::scenarios
