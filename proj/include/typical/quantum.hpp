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
 * Measurement semantics: pure states, observables, measurement-operator
 * families, Born weights, post-measurement states and unitary dilations.
 *
 * Apparatus pointer states are never free vectors. A family with k outcomes
 * is dilated onto system (x) C^k, where outcome i is recorded in the standard
 * basis vector e_i of the pointer register.
 */
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "typical/linalg.hpp"

namespace typical::quantum {

using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;

/// Tolerance on sum_m M_m^dagger M_m - I (Frobenius).
inline constexpr double kCompletenessTolerance = 1e-9;
/// Tolerance on ||psi|| - 1.
inline constexpr double kNormTolerance = 1e-10;

/// Unit vector with an optional display label.
class PureState {
  public:
    PureState() = default;
    /// Throws InvalidArgument unless ||v|| = 1 within kNormTolerance.
    explicit PureState(Vector v, std::string label = {});
    /// Normalizes `v` first; throws on the zero vector.
    static PureState normalize(const Vector &v, std::string label = {});

    [[nodiscard]] const Vector &vector() const { return vector_; }
    [[nodiscard]] const std::string &label() const { return label_; }
    [[nodiscard]] std::size_t dim() const { return vector_.dim(); }
    [[nodiscard]] Matrix density() const { return linalg::projector(vector_); }

  private:
    Vector vector_;
    std::string label_;
};

/// |<a|b>|^2 for unit vectors.
double fidelity(const PureState &a, const PureState &b);

/// Canonical text form of a real outcome: "1", "-1", "0.5" (never "-0").
std::string outcome_name(double value);

struct SpectralTerm {
    double outcome;
    Matrix projector;
};

/// Hermitian matrix together with its spectral decomposition.
class Observable {
  public:
    /// Throws InvalidArgument for a non-Hermitian matrix.
    explicit Observable(Matrix m, double tol = linalg::kEigenGroupTolerance);

    [[nodiscard]] const Matrix &matrix() const { return matrix_; }
    [[nodiscard]] const std::vector<SpectralTerm> &spectrum() const { return spectrum_; }
    [[nodiscard]] std::size_t dim() const { return matrix_.rows(); }

  private:
    Matrix matrix_;
    std::vector<SpectralTerm> spectrum_;
};

/// Indexed operators {M_m} with sum_m M_m^dagger M_m = I.
class MeasurementFamily {
  public:
    MeasurementFamily() = default;
    /// Throws InvariantViolation if completeness fails beyond `tol`, and
    /// InvalidArgument on shape problems or duplicate outcomes.
    MeasurementFamily(std::vector<std::string> outcomes, std::vector<Matrix> operators,
                      double tol = kCompletenessTolerance);

    /// Single-outcome family {U} for a unitary U.
    static MeasurementFamily evolution(const Matrix &u, std::string outcome = "*");
    /// {|e_i><e_i|} on C^dim with outcomes "0".."dim-1".
    static MeasurementFamily computational(std::size_t dim);
    /// {|b_i><b_i|} for an orthonormal basis, outcomes "0".."n-1".
    static MeasurementFamily basis(const std::vector<Vector> &orthonormal);

    [[nodiscard]] std::size_t size() const { return outcomes_.size(); }
    [[nodiscard]] std::size_t dim() const { return operators_.empty() ? 0 : operators_.front().rows(); }
    [[nodiscard]] const std::vector<std::string> &outcomes() const { return outcomes_; }
    [[nodiscard]] const std::vector<Matrix> &operators() const { return operators_; }
    [[nodiscard]] const Matrix &op(std::size_t i) const { return operators_.at(i); }
    /// Throws InvalidArgument for an unknown outcome.
    [[nodiscard]] std::size_t index_of(std::string_view outcome) const;
    [[nodiscard]] const Matrix &op(std::string_view outcome) const {
        return operators_[index_of(outcome)];
    }

    /// ||sum_m M_m^dagger M_m - I||_F
    [[nodiscard]] double completeness_residual() const;

  private:
    std::vector<std::string> outcomes_;
    std::vector<Matrix> operators_;
};

double completeness_residual(const std::vector<Matrix> &operators);

/// {E_m} from the spectrum, outcomes named by outcome_name().
MeasurementFamily projective_family(const Observable &obs);

/// ||M_m psi||^2
double born_weight(const MeasurementFamily &fam, const PureState &state, std::string_view m);
double born_weight(const MeasurementFamily &fam, const PureState &state, std::size_t m);

/// Branch weights threshold below which an outcome counts as impossible.
inline constexpr double kZeroWeight = 1e-14;

/// M_m psi / ||M_m psi||. Throws InvalidArgument when the branch weight is
/// at most kZeroWeight.
PureState post_measurement(const MeasurementFamily &fam, const PureState &state,
                           std::string_view m);
PureState post_measurement(const MeasurementFamily &fam, const PureState &state, std::size_t m);

/// Unitary U on system (x) pointer (pointer dimension = fam.size()) with
/// U (psi (x) e_0) = sum_m (M_m psi) (x) e_m.
/// Throws InvariantViolation if completeness fails.
Matrix dilate_to_unitary(const MeasurementFamily &fam);

/// sum_k U_k (x) |k><k|: applies branches[k] to the system when the label
/// register (the second factor) holds k. Throws InvariantViolation when a
/// branch is not unitary within `tol`.
Matrix controlled_unitary(const std::vector<Matrix> &branches, double tol = 1e-9);

namespace gates {
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();
} // namespace gates

} // namespace typical::quantum
