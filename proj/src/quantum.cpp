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

#include "typical/quantum.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "typical/error.hpp"

namespace typical::quantum {

PureState::PureState(Vector v, std::string label) : vector_(std::move(v)), label_(std::move(label)) {
    if (vector_.dim() == 0) {
        throw InvalidArgument("pure state must have positive dimension");
    }
    if (std::abs(vector_.norm() - 1.0) > kNormTolerance) {
        throw InvalidArgument("pure state is not a unit vector (norm " +
                              std::to_string(vector_.norm()) + ")");
    }
}

PureState PureState::normalize(const Vector &v, std::string label) {
    return PureState(v.normalized(), std::move(label));
}

double fidelity(const PureState &a, const PureState &b) {
    return std::norm(linalg::inner(a.vector(), b.vector()));
}

std::string outcome_name(double value) {
    const double r = std::round(value);
    if (std::abs(value - r) <= 1e-9 * std::max(1.0, std::abs(value))) {
        value = r;
    }
    if (value == 0.0) {
        value = 0.0; // drop the sign of -0
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

Observable::Observable(Matrix m, double tol) : matrix_(std::move(m)) {
    for (auto &space : linalg::hermitian_eigendecomposition(matrix_, tol)) {
        spectrum_.push_back({space.value, std::move(space.projector)});
    }
}

// --- MeasurementFamily ----------------------------------------------------------

double completeness_residual(const std::vector<Matrix> &operators) {
    if (operators.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    const std::size_t n = operators.front().cols();
    Matrix sum(n, n);
    for (const auto &op : operators) {
        sum += op.adjoint() * op;
    }
    return linalg::distance(sum, Matrix::identity(n));
}

MeasurementFamily::MeasurementFamily(std::vector<std::string> outcomes,
                                     std::vector<Matrix> operators, double tol)
    : outcomes_(std::move(outcomes)), operators_(std::move(operators)) {
    if (outcomes_.empty() || outcomes_.size() != operators_.size()) {
        throw InvalidArgument("measurement family needs one operator per outcome");
    }
    std::set<std::string> seen;
    for (const auto &o : outcomes_) {
        if (!seen.insert(o).second) {
            throw InvalidArgument("duplicate outcome '" + o + "'");
        }
    }
    const std::size_t n = operators_.front().rows();
    for (const auto &op : operators_) {
        if (op.rows() != n || op.cols() != n) {
            throw InvalidArgument("measurement operators must be square and equally sized");
        }
    }
    const double residual = quantum::completeness_residual(operators_);
    if (residual > tol) {
        throw InvariantViolation("completeness: ||sum M^dagger M - I||_F = " +
                                 std::to_string(residual));
    }
}

MeasurementFamily MeasurementFamily::evolution(const Matrix &u, std::string outcome) {
    return MeasurementFamily({std::move(outcome)}, {u});
}

MeasurementFamily MeasurementFamily::computational(std::size_t dim) {
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < dim; ++i) {
        basis.push_back(Vector::basis(dim, i));
    }
    return MeasurementFamily::basis(basis);
}

MeasurementFamily MeasurementFamily::basis(const std::vector<Vector> &orthonormal) {
    std::vector<std::string> outcomes;
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < orthonormal.size(); ++i) {
        outcomes.push_back(std::to_string(i));
        ops.push_back(linalg::projector(orthonormal[i]));
    }
    return {std::move(outcomes), std::move(ops)};
}

std::size_t MeasurementFamily::index_of(std::string_view outcome) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        if (outcomes_[i] == outcome) {
            return i;
        }
    }
    throw InvalidArgument("unknown outcome '" + std::string(outcome) + "'");
}

double MeasurementFamily::completeness_residual() const {
    return quantum::completeness_residual(operators_);
}

MeasurementFamily projective_family(const Observable &obs) {
    std::vector<std::string> outcomes;
    std::vector<Matrix> ops;
    for (const auto &term : obs.spectrum()) {
        outcomes.push_back(outcome_name(term.outcome));
        ops.push_back(term.projector);
    }
    return {std::move(outcomes), std::move(ops)};
}

// --- Born rule ------------------------------------------------------------------

namespace {
void require_dims(const MeasurementFamily &fam, const PureState &state) {
    if (fam.dim() != state.dim()) {
        throw InvalidArgument("state dimension " + std::to_string(state.dim()) +
                              " does not match measurement dimension " +
                              std::to_string(fam.dim()));
    }
}
} // namespace

double born_weight(const MeasurementFamily &fam, const PureState &state, std::size_t m) {
    require_dims(fam, state);
    const double n = (fam.op(m) * state.vector()).norm();
    return n * n;
}

double born_weight(const MeasurementFamily &fam, const PureState &state, std::string_view m) {
    return born_weight(fam, state, fam.index_of(m));
}

PureState post_measurement(const MeasurementFamily &fam, const PureState &state, std::size_t m) {
    require_dims(fam, state);
    Vector branch = fam.op(m) * state.vector();
    const double n = branch.norm();
    if (n * n <= kZeroWeight) {
        throw InvalidArgument("outcome '" + fam.outcomes()[m] + "' has zero weight");
    }
    branch *= 1.0 / n;
    return PureState(std::move(branch), fam.outcomes()[m]);
}

PureState post_measurement(const MeasurementFamily &fam, const PureState &state,
                           std::string_view m) {
    return post_measurement(fam, state, fam.index_of(m));
}

// --- Unitaries ------------------------------------------------------------------

Matrix dilate_to_unitary(const MeasurementFamily &fam) {
    const double residual = fam.completeness_residual();
    if (residual > kCompletenessTolerance) {
        throw InvariantViolation("completeness: ||sum M^dagger M - I||_F = " +
                                 std::to_string(residual));
    }
    const std::size_t n = fam.dim();
    const std::size_t k = fam.size();
    std::vector<Vector> fixed;
    fixed.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector col(n * k);
        for (std::size_t m = 0; m < k; ++m) {
            const Matrix &op = fam.op(m);
            for (std::size_t r = 0; r < n; ++r) {
                col[r * k + m] = op(r, i);
            }
        }
        fixed.push_back(std::move(col));
    }
    const Matrix completed = linalg::unitary_completion(fixed, 1e-8);

    // Columns i*k hold the prescribed action on psi (x) e_0; the completion
    // fills the remaining pointer-initial positions in order.
    Matrix u(n * k, n * k);
    std::size_t spare = n;
    for (std::size_t c = 0; c < n * k; ++c) {
        const std::size_t source = (c % k == 0) ? c / k : spare++;
        u.set_column(c, completed.column(source));
    }
    return u;
}

Matrix controlled_unitary(const std::vector<Matrix> &branches, double tol) {
    if (branches.empty()) {
        throw InvalidArgument("controlled unitary needs at least one branch");
    }
    const std::size_t n = branches.front().rows();
    const std::size_t k = branches.size();
    Matrix u(n * k, n * k);
    for (std::size_t b = 0; b < k; ++b) {
        const Matrix &ub = branches[b];
        if (ub.rows() != n || ub.cols() != n) {
            throw InvalidArgument("controlled branches must share one square dimension");
        }
        const double residual = linalg::unitarity_residual(ub);
        if (residual > tol) {
            throw InvariantViolation("unitarity of branch " + std::to_string(b) +
                                     ": ||U^dagger U - I||_F = " + std::to_string(residual));
        }
        u += linalg::tensor_product(ub, linalg::projector(Vector::basis(k, b)));
    }
    return u;
}

namespace gates {
Matrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
Matrix pauli_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
Matrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
Matrix hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{h, h}, {h, -h}};
}
} // namespace gates

} // namespace typical::quantum
