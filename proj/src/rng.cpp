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

#include "typical/rng.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace typical::rng {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
    return splitmix64(splitmix64(seed) ^ splitmix64(chunk + 0x632be59bd9b4e019ULL));
}

InverseCdf::InverseCdf(const measure::FiniteProbabilitySpace &space) {
    double acc = 0.0;
    upper_.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        acc += space.prob(i);
        upper_.push_back(acc);
        if (space.prob(i) > 0.0) {
            last_positive_ = static_cast<std::uint32_t>(i);
        }
    }
    // Absorb rounding in the running sum: everything above the last positive
    // symbol's lower edge belongs to it.
    for (std::size_t i = last_positive_; i < upper_.size(); ++i) {
        upper_[i] = 2.0;
    }
}

std::uint32_t InverseCdf::operator()(double u) const {
    const auto it = std::upper_bound(upper_.begin(), upper_.end(), u);
    return static_cast<std::uint32_t>(it - upper_.begin());
}

void fill_chunk(const InverseCdf &sampler, std::uint64_t seed, std::uint64_t chunk,
                std::span<std::uint32_t> out) {
    std::mt19937_64 engine(chunk_seed(seed, chunk));
    for (auto &s : out) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        s = sampler(u);
    }
}

std::vector<std::uint32_t> sample_indices(const measure::FiniteProbabilitySpace &space,
                                          std::uint64_t seed, std::size_t n,
                                          unsigned threads) {
    const InverseCdf sampler(space);
    std::vector<std::uint32_t> out(n);
    const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    const std::size_t workers = std::min<std::size_t>(threads, chunks);
    auto work = [&](std::size_t first) {
        for (std::size_t c = first; c < chunks; c += std::max<std::size_t>(workers, 1)) {
            const std::size_t begin = c * kChunkSize;
            const std::size_t len = std::min(kChunkSize, n - begin);
            fill_chunk(sampler, seed, c, std::span(out).subspan(begin, len));
        }
    };
    if (workers <= 1) {
        work(0);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }
    return out;
}

} // namespace typical::rng
