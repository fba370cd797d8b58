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

#include "typical/builtins.hpp"

#include <cmath>

#include "typical/bb84.hpp"
#include "typical/error.hpp"

namespace typical::scenarios {

namespace {

using linalg::Complex;

Vector vec(std::initializer_list<Complex> xs) {
    Vector v(xs.size());
    std::size_t i = 0;
    for (auto x : xs) {
        v[i++] = x;
    }
    return v;
}

PureState state_or(const BuiltinParams &params, Vector fallback) {
    return PureState::normalize(params.psi ? *params.psi : fallback);
}

} // namespace

const std::vector<std::string> &builtin_names() {
    static const std::vector<std::string> names = {"sec9",    "sec10",   "sec11", "sec12-composite",
                                                   "mixture", "bb84",    "bb84-eve"};
    return names;
}

Scenario builtin(const std::string &name, const BuiltinParams &params) {
    const bool takes_psi = name == "sec9" || name == "sec10";
    if (params.psi && !takes_psi) {
        throw InvalidArgument("--psi applies only to sec9 and sec10");
    }
    Scenario s;
    if (name == "sec9") {
        s = sec9(state_or(params, vec({std::sqrt(0.75), 0.5})), quantum::gates::pauli_z());
    } else if (name == "sec10") {
        s = sec10(state_or(params, vec({0.6, Complex(0.0, 0.8)})), quantum::gates::pauli_z(),
                  quantum::gates::pauli_x());
    } else if (name == "sec11") {
        s = sec11({PureState(vec({1.0, 0.0})), PureState(bb84_state(0, 1))}, {0.3, 0.7},
                  quantum::gates::pauli_z());
    } else if (name == "sec12-composite") {
        s = sec12_composite({PureState(vec({std::cos(0.3), std::sin(0.3)})),
                             PureState(vec({0.6, Complex(0.0, 0.8)}))},
                            {quantum::gates::pauli_z(), quantum::gates::pauli_x()});
    } else if (name == "mixture") {
        s = mixture(PureState(vec({0.6, 0.8})), quantum::gates::pauli_z(),
                    PureState(vec({std::cos(0.4), Complex(0.0, std::sin(0.4))})),
                    {quantum::gates::pauli_x(), quantum::gates::pauli_y()});
    } else if (name == "bb84" || name == "bb84-eve") {
        s = bb84_scenario(params.p, name == "bb84-eve");
    } else {
        std::string known;
        for (const auto &n : builtin_names()) {
            known += (known.empty() ? "" : ", ") + n;
        }
        throw InvalidArgument("unknown builtin '" + name + "' (known: " + known + ")");
    }
    s.seed = params.seed;
    s.repetitions = params.n;
    return s;
}

Vector random_unit_vector(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] = Complex(g(rng), g(rng));
    }
    return v.normalized();
}

Matrix random_hermitian(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = g(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = Complex(g(rng), g(rng)) / std::sqrt(2.0);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

quantum::MeasurementFamily random_family(std::size_t dim, std::size_t outcomes,
                                         std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<Matrix> blocks;
    Matrix s(dim, dim);
    for (std::size_t k = 0; k < outcomes; ++k) {
        Matrix b(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                b(i, j) = Complex(g(rng), g(rng));
            }
        }
        s += b.adjoint() * b;
        blocks.push_back(std::move(b));
    }
    // S^(-1/2) from the eigenpairs of the positive definite S.
    Matrix inv_sqrt(dim, dim);
    for (const auto &e : linalg::hermitian_eigenpairs(s)) {
        inv_sqrt += Complex(1.0 / std::sqrt(e.value)) * linalg::projector(e.vector);
    }
    std::vector<std::string> names;
    std::vector<Matrix> ops;
    for (std::size_t k = 0; k < outcomes; ++k) {
        names.push_back(std::to_string(k));
        ops.push_back(blocks[k] * inv_sqrt);
    }
    return {std::move(names), std::move(ops)};
}

} // namespace typical::scenarios
