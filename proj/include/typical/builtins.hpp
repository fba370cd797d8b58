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
 * Named builtin scenarios with default parameters, plus random test objects
 * (states, observables, measurement families).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "typical/scenarios.hpp"

namespace typical::scenarios {

struct BuiltinParams {
    /// Overrides the measured state of sec9 / sec10.
    std::optional<Vector> psi;
    double p = 0.5;
    std::uint64_t seed = 0;
    std::size_t n = 0;
};

const std::vector<std::string> &builtin_names();

/// Throws InvalidArgument for an unknown name or an inapplicable parameter.
Scenario builtin(const std::string &name, const BuiltinParams &params);

/// Haar-distributed unit vector.
Vector random_unit_vector(std::size_t dim, std::mt19937_64 &rng);
/// Hermitian matrix with Gaussian entries (GUE up to scale).
Matrix random_hermitian(std::size_t dim, std::mt19937_64 &rng);
/// Family {G_m S^(-1/2)} from Gaussian blocks G_m, S = sum G_m^dagger G_m.
quantum::MeasurementFamily random_family(std::size_t dim, std::size_t outcomes,
                                         std::mt19937_64 &rng);

} // namespace typical::scenarios
