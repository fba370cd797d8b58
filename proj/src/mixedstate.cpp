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

#include "typical/mixedstate.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/erf.hpp>

#include "typical/battery.hpp"
#include "typical/error.hpp"

namespace typical::mixedstate {

using linalg::Complex;

DensityMatrix::DensityMatrix(Matrix m, double tol) : matrix_(std::move(m)) {
    if (!matrix_.square()) {
        throw InvariantViolation("density matrix must be square");
    }
    const double defect = matrix_.hermiticity_defect();
    if (defect > tol) {
        throw InvariantViolation("density matrix is not Hermitian (defect " +
                                 std::to_string(defect) + ")");
    }
    const Complex tr = matrix_.trace();
    if (std::abs(tr - 1.0) > tol) {
        throw InvariantViolation("density matrix trace is " + std::to_string(tr.real()) +
                                 ", not 1");
    }
    const auto eig = linalg::hermitian_eigenvalues(matrix_, std::max(tol, 1e-9));
    if (!eig.empty() && eig.front() < -tol) {
        throw InvariantViolation("density matrix is not positive semidefinite (eigenvalue " +
                                 std::to_string(eig.front()) + ")");
    }
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

// --- MixedState -------------------------------------------------------------------

MixedState::MixedState(std::vector<PureState> states, FiniteProbabilitySpace space,
                       std::optional<WorldPrefix> stream)
    : states_(std::move(states)), space_(std::move(space)), stream_(std::move(stream)) {
    if (states_.empty()) {
        throw InvalidArgument("mixed state needs at least one pure state");
    }
    if (space_.size() != states_.size() || space_.arity() != 1) {
        throw InvalidArgument("mixed state space must be atomic over the state labels");
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].dim() != states_.front().dim()) {
            throw InvalidArgument("mixed state vectors differ in dimension");
        }
        if (space_.symbol(i).front() != states_[i].label()) {
            throw InvalidArgument("space alphabet does not match state label '" +
                                  states_[i].label() + "'");
        }
    }
    if (stream_ && !measure::approx_equal(stream_->governing, space_, 1e-12)) {
        throw InvalidArgument("stream is not governed by the mixed state's space");
    }
}

DensityMatrix density_of(const MixedState &ms) {
    Matrix rho(ms.dim(), ms.dim());
    for (std::size_t i = 0; i < ms.states().size(); ++i) {
        const double p = ms.space().prob(i);
        if (p > 0.0) {
            rho += Complex(p) * ms.states()[i].density();
        }
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix empirical_density(const MixedState &ms) {
    if (!ms.stream()) {
        throw InvalidArgument("mixed state carries no stream");
    }
    const auto freq = worlds::frequency(*ms.stream(), ms.space());
    Matrix rho(ms.dim(), ms.dim());
    for (std::size_t i = 0; i < ms.states().size(); ++i) {
        if (freq.counts[i] != 0) {
            rho += Complex(freq.empirical[i]) * ms.states()[i].density();
        }
    }
    return DensityMatrix(std::move(rho));
}

MixedState from_labeled_stream(const WorldPrefix &w,
                               const std::function<PureState(const measure::Symbol &)> &state_of) {
    std::vector<bool> occurs(w.governing.size(), false);
    for (auto s : w.symbols) {
        occurs[s] = true;
    }
    std::vector<PureState> states;
    std::vector<double> probs;
    std::vector<std::uint32_t> label_of(w.governing.size(), 0);
    for (std::uint32_t i = 0; i < w.governing.size(); ++i) {
        if (!(w.governing.prob(i) > 0.0) && !occurs[i]) {
            continue;
        }
        PureState psi = state_of(w.governing.symbol(i));
        auto same = std::find_if(states.begin(), states.end(), [&](const PureState &s) {
            return quantum::fidelity(s, psi) > 1.0 - kSameStateTolerance;
        });
        if (same != states.end()) {
            const auto k = static_cast<std::size_t>(same - states.begin());
            label_of[i] = static_cast<std::uint32_t>(k);
            probs[k] += w.governing.prob(i);
            continue;
        }
        std::string label = psi.label().empty() ? measure::to_string(w.governing.symbol(i)) : psi.label();
        if (std::any_of(states.begin(), states.end(),
                        [&](const PureState &s) { return s.label() == label; })) {
            label += "#" + measure::to_string(w.governing.symbol(i));
        }
        label_of[i] = static_cast<std::uint32_t>(states.size());
        states.emplace_back(psi.vector(), std::move(label));
        probs.push_back(w.governing.prob(i));
    }
    std::vector<std::string> names;
    for (const auto &s : states) {
        names.push_back(s.label());
    }
    // Dropped zero-probability symbols never occur, so the total is intact.
    auto space = FiniteProbabilitySpace::from_names(std::move(names), std::move(probs));
    WorldPrefix relabelled{space, {}};
    relabelled.symbols.reserve(w.size());
    for (auto s : w.symbols) {
        relabelled.symbols.push_back(label_of[s]);
    }
    return MixedState(std::move(states), std::move(space), std::move(relabelled));
}

// --- Measurement ------------------------------------------------------------------

FiniteProbabilitySpace measurement_space(const DensityMatrix &rho,
                                         const quantum::MeasurementFamily &fam) {
    if (fam.dim() != rho.dim()) {
        throw InvalidArgument("measurement dimension does not match the density matrix");
    }
    std::vector<double> probs;
    for (const auto &op : fam.operators()) {
        probs.push_back(std::max(0.0, (op.adjoint() * op * rho.matrix()).trace().real()));
    }
    double sum = 0.0;
    for (double p : probs) {
        sum += p;
    }
    for (double &p : probs) {
        p /= sum;
    }
    return FiniteProbabilitySpace::from_names(fam.outcomes(), std::move(probs));
}

FiniteProbabilitySpace measurement_space(const MixedState &ms,
                                         const quantum::MeasurementFamily &fam) {
    return measurement_space(density_of(ms), fam);
}

PostMeasurement post_measurement_mixed(const DensityMatrix &rho, const Matrix &f) {
    if (f.rows() != rho.dim() || f.cols() != rho.dim()) {
        throw InvalidArgument("projector dimension does not match the density matrix");
    }
    const Matrix frf = f * rho.matrix() * f.adjoint();
    const double weight = frf.trace().real();
    if (!(weight > quantum::kZeroWeight)) {
        throw InvalidArgument("conditioning on an outcome of probability zero");
    }
    return {DensityMatrix(Complex(1.0 / weight) * frf), weight};
}

// --- Independence and composition -------------------------------------------------

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::independent:
        return "independent";
    case Verdict::dependent:
        return "dependent";
    case Verdict::inconclusive:
        break;
    }
    return "inconclusive";
}

namespace {

struct JointStream {
    FiniteProbabilitySpace product;
    WorldPrefix joint;
};

// Mixed-radix joint stream over the product of the reference alphabets.
JointStream joint_stream(std::span<const WorldPrefix> streams,
                         std::span<const FiniteProbabilitySpace> spaces) {
    if (streams.empty() || streams.size() != spaces.size()) {
        throw InvalidArgument("independence test needs one space per stream");
    }
    const std::size_t n = streams.front().size();
    for (const auto &s : streams) {
        if (s.size() != n) {
            throw InvalidArgument("streams differ in length");
        }
    }
    JointStream out{measure::product_space(spaces), {}};
    out.joint.governing = out.product;
    out.joint.symbols.assign(n, 0);
    for (std::size_t k = 0; k < streams.size(); ++k) {
        std::vector<std::uint32_t> to_ref(streams[k].governing.size());
        for (std::uint32_t i = 0; i < to_ref.size(); ++i) {
            to_ref[i] = spaces[k].index_of(streams[k].governing.symbol(i));
        }
        const auto radix = static_cast<std::uint32_t>(spaces[k].size());
        for (std::size_t t = 0; t < n; ++t) {
            out.joint.symbols[t] = out.joint.symbols[t] * radix + to_ref[streams[k].symbols[t]];
        }
    }
    return out;
}

} // namespace

IndependenceReport independence_test(std::span<const WorldPrefix> streams,
                                     std::span<const FiniteProbabilitySpace> spaces) {
    const JointStream js = joint_stream(streams, spaces);
    IndependenceReport r;
    r.n = js.joint.size();
    r.cells = js.product.size();

    const double family_alpha = std::erfc(5.0 / std::sqrt(2.0));
    r.cell_threshold = std::sqrt(2.0) *
                       boost::math::erfc_inv(family_alpha / static_cast<double>(r.cells));
    if (r.n == 0) {
        return r;
    }

    std::size_t diagonal = 0;
    for (std::size_t t = 0; t < r.n; ++t) {
        bool same = true;
        for (std::size_t k = 1; k < streams.size() && same; ++k) {
            same = streams[k].symbols[t] == streams[0].symbols[t];
        }
        diagonal += same ? 1 : 0;
    }
    r.diagonal_mass = static_cast<double>(diagonal) / static_cast<double>(r.n);

    const auto freq = worlds::frequency(js.joint, js.product);
    const double n = static_cast<double>(r.n);
    bool violated = false;
    for (std::size_t c = 0; c < r.cells; ++c) {
        const double p = js.product.prob(c);
        if (p <= 0.0) {
            violated = violated || freq.counts[c] != 0;
            continue;
        }
        if (p >= 1.0) {
            continue;
        }
        const double z = std::abs(static_cast<double>(freq.counts[c]) - n * p) /
                         std::sqrt(n * p * (1.0 - p));
        r.max_cell_z = std::max(r.max_cell_z, z);
    }
    violated = violated || r.max_cell_z > r.cell_threshold;
    if (r.n >= 2) {
        r.serial_p_value = worlds::serial_pairs_test(js.joint, js.product).p_value;
        violated = violated || r.serial_p_value < family_alpha;
    }

    if (r.n < kMinIndependenceLength) {
        r.verdict = Verdict::inconclusive;
    } else {
        r.verdict = violated ? Verdict::dependent : Verdict::independent;
    }
    return r;
}

TensorMixed tensor_mixed(const std::vector<MixedState> &components) {
    if (components.empty()) {
        throw InvalidArgument("tensor of an empty list of mixed states");
    }
    std::vector<WorldPrefix> streams;
    std::vector<FiniteProbabilitySpace> spaces;
    for (const auto &c : components) {
        if (!c.stream()) {
            throw InvalidArgument("tensor_mixed needs stream-bearing mixed states");
        }
        streams.push_back(*c.stream());
        spaces.push_back(c.space());
    }
    for (const auto &s : streams) {
        if (s.size() != streams.front().size()) {
            throw InvalidArgument("component streams differ in length");
        }
    }
    if (components.size() == 1) {
        IndependenceReport trivial;
        trivial.verdict = Verdict::independent;
        trivial.n = streams.front().size();
        trivial.cells = spaces.front().size();
        return {components.front(), trivial};
    }

    IndependenceReport report = independence_test(streams, spaces);
    JointStream js = joint_stream(streams, spaces);

    // Tensored labels and vectors, first component most significant.
    std::vector<PureState> states;
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < js.product.size(); ++c) {
        std::size_t rem = c;
        std::vector<std::size_t> digits(components.size());
        for (std::size_t k = components.size(); k-- > 0;) {
            digits[k] = rem % components[k].states().size();
            rem /= components[k].states().size();
        }
        linalg::Vector v = components[0].states()[digits[0]].vector();
        std::string label = components[0].states()[digits[0]].label();
        for (std::size_t k = 1; k < components.size(); ++k) {
            v = linalg::tensor_product(v, components[k].states()[digits[k]].vector());
            label += "⊗" + components[k].states()[digits[k]].label();
        }
        labels.push_back(label);
        states.emplace_back(std::move(v), std::move(label));
    }

    FiniteProbabilitySpace governing =
        report.verdict == Verdict::independent
            ? FiniteProbabilitySpace::from_names(labels, js.product.probs())
            : FiniteProbabilitySpace::from_names(labels, worlds::frequency(js.joint, js.product).empirical);
    WorldPrefix stream{governing, std::move(js.joint.symbols)};
    return {MixedState(std::move(states), std::move(governing), std::move(stream)), report};
}

bool pairwise_linear_independence(std::span<const PureState> states) {
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            if (states[i].dim() != states[j].dim()) {
                throw InvalidArgument("states differ in dimension");
            }
            const double overlap = std::abs(linalg::inner(states[i].vector().normalized(),
                                                          states[j].vector().normalized()));
            if (!(overlap < 1.0 - 1e-10)) {
                return false;
            }
        }
    }
    return true;
}

DensityMatrix mixture_density(std::span<const std::pair<double, DensityMatrix>> components) {
    if (components.empty()) {
        throw InvalidArgument("mixture of no components");
    }
    const std::size_t n = components.front().second.dim();
    double total = 0.0;
    Matrix rho(n, n);
    for (const auto &[w, d] : components) {
        if (!(w >= 0.0) || d.dim() != n) {
            throw InvalidArgument("mixture weights must be non-negative and dimensions equal");
        }
        total += w;
        rho += Complex(w) * d.matrix();
    }
    if (std::abs(total - 1.0) > measure::kProbabilityTolerance) {
        throw InvalidArgument("mixture weights sum to " + std::to_string(total) + ", not 1");
    }
    return DensityMatrix(std::move(rho));
}

} // namespace typical::mixedstate
