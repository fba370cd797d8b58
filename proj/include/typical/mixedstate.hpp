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
 * Mixed states as labelled pure-state alphabets with a probability space
 * (and optionally a sampled stream over the labels), density matrices,
 * independence of mixed states and probabilistic mixtures.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "typical/linalg.hpp"
#include "typical/measure.hpp"
#include "typical/quantum.hpp"
#include "typical/worlds.hpp"

namespace typical::mixedstate {

using linalg::Matrix;
using measure::FiniteProbabilitySpace;
using quantum::PureState;
using worlds::WorldPrefix;

inline constexpr double kDensityTolerance = 1e-10;
/// Two labelled vectors are the same state when their fidelity exceeds
/// 1 - kSameStateTolerance (global phase is ignored).
inline constexpr double kSameStateTolerance = 1e-10;

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
  public:
    /// Throws InvariantViolation naming the failed property.
    explicit DensityMatrix(Matrix m, double tol = kDensityTolerance);

    [[nodiscard]] const Matrix &matrix() const { return matrix_; }
    [[nodiscard]] std::size_t dim() const { return matrix_.rows(); }
    /// tr(rho^2)
    [[nodiscard]] double purity() const;

  private:
    Matrix matrix_;
};

class MixedState {
  public:
    /// `space` must be atomic over exactly the state labels, in order.
    /// A stream, when given, must be governed by `space`.
    MixedState(std::vector<PureState> states, FiniteProbabilitySpace space,
               std::optional<WorldPrefix> stream = std::nullopt);

    [[nodiscard]] const std::vector<PureState> &states() const { return states_; }
    [[nodiscard]] const FiniteProbabilitySpace &space() const { return space_; }
    [[nodiscard]] const std::optional<WorldPrefix> &stream() const { return stream_; }
    [[nodiscard]] std::size_t dim() const { return states_.front().dim(); }

  private:
    std::vector<PureState> states_;
    FiniteProbabilitySpace space_;
    std::optional<WorldPrefix> stream_;
};

/// sum_psi P(psi) |psi><psi|
DensityMatrix density_of(const MixedState &ms);

/// Density with the space replaced by the stream's empirical frequencies.
/// Throws InvalidArgument if the mixed state carries no stream.
DensityMatrix empirical_density(const MixedState &ms);

/// Builds a mixed state from a world prefix whose symbols each name a pure
/// state. Symbols carrying the same vector (up to phase) share one label and
/// their probabilities add. `state_of` is called only for symbols of positive
/// probability or that occur in the prefix.
MixedState from_labeled_stream(const WorldPrefix &w,
                               const std::function<PureState(const measure::Symbol &)> &state_of);

/// P(m) = tr(M_m^dagger M_m rho), over the family's outcomes.
FiniteProbabilitySpace measurement_space(const DensityMatrix &rho,
                                         const quantum::MeasurementFamily &fam);
FiniteProbabilitySpace measurement_space(const MixedState &ms,
                                         const quantum::MeasurementFamily &fam);

struct PostMeasurement {
    DensityMatrix density;
    double weight;
};

/// F rho F / tr(F rho). Throws InvalidArgument when tr(F rho) is zero.
PostMeasurement post_measurement_mixed(const DensityMatrix &rho, const Matrix &f);

enum class Verdict { independent, dependent, inconclusive };
std::string to_string(Verdict v);

struct IndependenceReport {
    Verdict verdict = Verdict::inconclusive;
    std::size_t n = 0;
    std::size_t cells = 0;
    /// Largest |count - n p| / sqrt(n p (1-p)) over joint cells.
    double max_cell_z = 0.0;
    /// Bonferroni-corrected per-cell threshold equivalent to a family-wise 5 sigma.
    double cell_threshold = 0.0;
    /// Fraction of positions where all component indices coincide.
    double diagonal_mass = 0.0;
    /// p-value of the disjoint-pairs serial test on the joint stream.
    double serial_p_value = 1.0;
};

/// Minimum prefix length for a verdict other than inconclusive.
inline constexpr std::size_t kMinIndependenceLength = 10000;

/// Compares joint frequencies against the product of `spaces`.
/// Throws InvalidArgument on length or count mismatch.
IndependenceReport independence_test(std::span<const WorldPrefix> streams,
                                     std::span<const FiniteProbabilitySpace> spaces);

struct TensorMixed {
    MixedState state;
    IndependenceReport independence;
};

/// Elementwise tensor product of stream-bearing mixed states over the
/// tensored label alphabet. The governing space is the product of the
/// component spaces when the streams test independent, and the empirical
/// joint frequencies otherwise.
TensorMixed tensor_mixed(const std::vector<MixedState> &components);

/// No two states are parallel: |<a|b>| < 1 - 1e-10 after normalization.
bool pairwise_linear_independence(std::span<const PureState> states);

/// sum_k w_k rho_k. Throws InvalidArgument unless the weights form a
/// probability vector.
DensityMatrix mixture_density(std::span<const std::pair<double, DensityMatrix>> components);

} // namespace typical::mixedstate
