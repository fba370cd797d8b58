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
 * Multi-stage measurement scenarios: compilation to a single family over
 * outcome tuples, exact outcome distributions, sampled runs, and the
 * builtin experiments.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "typical/linalg.hpp"
#include "typical/measure.hpp"
#include "typical/quantum.hpp"
#include "typical/worlds.hpp"

namespace typical::scenarios {

using linalg::Matrix;
using linalg::Vector;
using measure::FiniteProbabilitySpace;
using measure::Symbol;
using quantum::MeasurementFamily;
using quantum::PureState;
using worlds::WorldPrefix;

inline constexpr std::size_t kDefaultTupleCap = 1'000'000;

/// A measurement family (recorded: contributes one tuple component) or a
/// unitary (unrecorded evolution).
using Operation = std::variant<MeasurementFamily, Matrix>;

struct Stage {
    /// Component name in reports; empty means "s<index>".
    std::string name;
    std::vector<std::size_t> targets;
    /// Earlier recorded stages whose outcomes select the branch.
    std::vector<std::size_t> control_stages;
    /// Keyed by the outcomes of control_stages, in order. An uncontrolled
    /// stage has the single key {}. A reachable key without a branch loses
    /// that branch, which compile() reports as a completeness failure.
    std::map<std::vector<std::string>, Operation> branches;

    static Stage measure(std::vector<std::size_t> targets, MeasurementFamily fam,
                         std::string name = {});
    static Stage evolve(std::vector<std::size_t> targets, Matrix u, std::string name = {});
    static Stage controlled(std::vector<std::size_t> targets, std::vector<std::size_t> controls,
                            std::map<std::vector<std::string>, Operation> branches,
                            std::string name = {});

    /// True when the branches are measurement families.
    [[nodiscard]] bool recorded() const;
};

struct Scenario {
    std::vector<std::size_t> factors;
    PureState initial;
    std::vector<Stage> stages;
    std::size_t repetitions = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t dim() const;
    /// Throws InvalidArgument on bad targets, dimensions or control wiring.
    void validate() const;
    /// Indices of recorded stages, in tuple-component order.
    [[nodiscard]] std::vector<std::size_t> recorded_stages() const;
    /// Names of the tuple components.
    [[nodiscard]] std::vector<std::string> component_names() const;
    /// Outcome alphabet of each tuple component (union over branches).
    [[nodiscard]] std::vector<std::vector<std::string>> component_alphabets() const;
    /// The scenario cut after its first `stages` stages.
    [[nodiscard]] Scenario truncated(std::size_t stages) const;
};

/// Tuple-space cap, overridable by the TYPICAL_WORLDS_CAP environment variable.
std::size_t tuple_cap();

struct CompiledFamily {
    std::vector<std::string> components;
    std::vector<Symbol> tuples;
    /// Outcome i is to_string(tuples[i]).
    MeasurementFamily family;
};

/// Per-tuple operators as ordered products of the lifted stage operators.
/// Throws InvariantViolation if the result is incomplete, CapExceeded past
/// the tuple cap.
CompiledFamily compile(const Scenario &s, std::size_t cap = tuple_cap());

struct OutcomeDistribution {
    std::vector<std::string> components;
    /// All tuples of the component alphabets; impossible ones carry 0.
    FiniteProbabilitySpace space;
    /// Normalized joint post-state per tuple; empty for probability 0 or
    /// when states were not requested.
    std::vector<std::optional<PureState>> branch_states;
};

/// Exact enumeration of squared branch norms. Weights at or below
/// quantum::kZeroWeight are set to exactly 0.
OutcomeDistribution distribution(const Scenario &s, bool with_states = true,
                                 std::size_t cap = tuple_cap());

struct RunResult {
    OutcomeDistribution exact;
    /// Governed by exact.space.support().
    WorldPrefix world;
};

/// Samples `n` repetitions (s.repetitions when n is 0) with seed s.seed.
RunResult run(const Scenario &s, std::size_t n = 0, unsigned threads = 1);

/// Pure state of the factors in `keep` when the joint state is a product
/// across that cut. Throws InvalidArgument when the reduced state is mixed.
PureState reduced_pure_state(const PureState &joint, const std::vector<std::size_t> &factors,
                             const std::vector<std::size_t> &keep);

// --- Builtin experiments --------------------------------------------------------------

/// One projective measurement of `observable` on psi.
Scenario sec9(const PureState &psi, const Matrix &observable);
/// A then B on the same system.
Scenario sec10(const PureState &psi, const Matrix &a, const Matrix &b);
/// Ancilla prepared as sum_k sqrt(p_k)|k>|psi_k>; A = computational basis of
/// the ancilla, then B on the system.
Scenario sec11(const std::vector<PureState> &states, const std::vector<double> &weights,
               const Matrix &b);
/// Independent systems measured in parallel, observable k on system k.
Scenario sec12_composite(const std::vector<PureState> &states,
                         const std::vector<Matrix> &observables);
/// A on system A; the observable measured on system B is chosen by A's outcome.
Scenario mixture(const PureState &psi_a, const Matrix &a, const PureState &psi_b,
                 const std::vector<Matrix> &b_by_outcome);

} // namespace typical::scenarios
