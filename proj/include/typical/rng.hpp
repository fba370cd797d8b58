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
 * Seeded, chunked pseudo-random sampling from finite probability spaces.
 *
 * The sample stream is split into fixed-size chunks; chunk c draws from a
 * std::mt19937_64 seeded with splitmix64(seed, c). Any symbol's value depends
 * only on (seed, position), so pull-based and bulk (multi-threaded) paths
 * produce identical sequences.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "typical/measure.hpp"

namespace typical::rng {

/// Identity of the sampling scheme; embedded in reports.
inline constexpr const char *kGeneratorId = "mt19937_64/splitmix64-chunk65536/inverse-cdf-53bit";
inline constexpr std::size_t kChunkSize = 65536;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed used for chunk `chunk` of the stream seeded by `seed`.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

/// Inverse-CDF sampler. Zero-probability symbols own empty intervals and are
/// never produced.
class InverseCdf {
  public:
    explicit InverseCdf(const measure::FiniteProbabilitySpace &space);
    /// u in [0, 1)
    [[nodiscard]] std::uint32_t operator()(double u) const;

  private:
    std::vector<double> upper_;
    std::uint32_t last_positive_ = 0;
};

/// Fills `out` with the symbols at positions [chunk*kChunkSize, ... + out.size()).
void fill_chunk(const InverseCdf &sampler, std::uint64_t seed, std::uint64_t chunk,
                std::span<std::uint32_t> out);

/// n i.i.d. symbol indices; `threads` caps worker threads (0 = hardware).
std::vector<std::uint32_t> sample_indices(const measure::FiniteProbabilitySpace &space,
                                          std::uint64_t seed, std::size_t n,
                                          unsigned threads = 1);

} // namespace typical::rng
