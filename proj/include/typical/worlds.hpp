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
 * World streams: the computable stand-in for a typical world.
 *
 * A WorldStream is a lazily evaluated sequence of symbol indices over the
 * alphabet of its governing FiniteProbabilitySpace. Generators sample i.i.d.
 * from that space; transforms (contraction, marginalization, conditioning,
 * characteristic sequences, computable shuffles) consume an upstream stream
 * and carry the governing space their output is random for.
 *
 * Streams are single-consumer and move-only.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "typical/measure.hpp"

namespace typical::worlds {

using measure::Event;
using measure::FiniteProbabilitySpace;
using measure::Symbol;

/// A materialized finite prefix of a world, with its governing space.
struct WorldPrefix {
    FiniteProbabilitySpace governing;
    std::vector<std::uint32_t> symbols;

    [[nodiscard]] std::size_t size() const { return symbols.size(); }
    [[nodiscard]] const Symbol &symbol_at(std::size_t i) const {
        return governing.symbol(symbols.at(i));
    }
    /// One symbol per line, in measure::to_string form.
    [[nodiscard]] std::string to_lines() const;
};

class WorldStream {
  public:
    class Source {
      public:
        virtual ~Source() = default;
        virtual std::optional<std::uint32_t> next() = 0;
        /// 1-based position, in the immediate upstream, of the symbol most
        /// recently returned. Equals the own position for non-filtering sources.
        [[nodiscard]] virtual std::uint64_t origin() const = 0;
    };

    WorldStream(FiniteProbabilitySpace governing, std::unique_ptr<Source> source);
    WorldStream(WorldStream &&) noexcept = default;
    WorldStream &operator=(WorldStream &&) noexcept = default;
    WorldStream(const WorldStream &) = delete;
    WorldStream &operator=(const WorldStream &) = delete;

    [[nodiscard]] const FiniteProbabilitySpace &governing() const { return governing_; }

    /// Next symbol index, or nullopt when a finite source is exhausted.
    std::optional<std::uint32_t> next();
    /// Number of symbols emitted so far.
    [[nodiscard]] std::uint64_t position() const { return position_; }
    /// See Source::origin.
    [[nodiscard]] std::uint64_t origin() const { return source_->origin(); }

    /// Pulls up to n further symbols.
    WorldPrefix take(std::size_t n);

  private:
    FiniteProbabilitySpace governing_;
    std::unique_ptr<Source> source_;
    std::uint64_t position_ = 0;
};

/// Lazy i.i.d. generator.
WorldStream generator(const FiniteProbabilitySpace &p, std::uint64_t seed);

/// Bulk path: same sequence as generator(p, seed).take(n), optionally
/// sharded across `threads` workers.
WorldPrefix sample_world(const FiniteProbabilitySpace &p, std::uint64_t seed, std::size_t n,
                         unsigned threads = 1);

/// Replays a materialized prefix as a finite stream.
WorldStream replay(WorldPrefix prefix);

/// Replaces every b by a. Output alphabet drops b; Q(a) = P(a) + P(b).
WorldStream contract(WorldStream w, const Symbol &b, const Symbol &a);

/// Projects tuples onto one component; governed by the marginal space.
WorldStream marginalize(WorldStream w, std::size_t component);

/// Keeps members of B in order; governed by the conditional space.
/// origin() reports the upstream position n_k of each kept symbol.
WorldStream condition(WorldStream w, const Event &b);

/// 1 where the symbol lies in A, 0 otherwise; governed by the mixing space.
WorldStream characteristic(WorldStream w, const Event &a);

/// Total injective index map on positive integers, from a declared family.
class IndexMap {
  public:
    static IndexMap identity();
    /// f(n) = slope * n + offset, slope >= 1.
    static IndexMap affine(std::uint64_t slope, std::uint64_t offset);
    /// f(n) = n-th prime.
    static IndexMap primes();
    /// f(n) = table[n-1]; defined for n <= table.size(). Throws
    /// InvalidArgument if the table is not injective or contains 0.
    static IndexMap table(std::vector<std::uint64_t> values);

    /// nullopt past the end of a table.
    [[nodiscard]] std::optional<std::uint64_t> operator()(std::uint64_t n) const;
    [[nodiscard]] bool monotone() const { return monotone_; }
    [[nodiscard]] const std::string &description() const { return description_; }

  private:
    std::function<std::optional<std::uint64_t>(std::uint64_t)> f_;
    bool monotone_ = true;
    std::string description_;
};

/// alpha_f(k) = alpha(f(k)); governing space unchanged.
WorldStream shuffle(WorldStream w, IndexMap f);

/// n-th prime (1-based), memoized and thread-safe.
std::uint64_t nth_prime(std::uint64_t n);

struct FrequencyReport {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    std::vector<double> empirical;
    FiniteProbabilitySpace reference;
    double max_abs_deviation = 0.0;
    /// 5 * max_a sqrt(P(a)(1-P(a))/n)
    double sigma_bound = 0.0;

    [[nodiscard]] bool within_bound() const { return max_abs_deviation <= sigma_bound; }
    /// Every cell within k * sqrt(P(a)(1-P(a))/n) of P(a); zero-probability
    /// cells must be empty.
    [[nodiscard]] bool cells_within(double k = 5.0) const;
    /// Empirical frequencies as a space over the reference alphabet.
    [[nodiscard]] FiniteProbabilitySpace empirical_space() const;
};

/// Counts symbols of `w` against the reference space `p`, matching symbols
/// by value. Throws InvalidArgument on an empty prefix or on a symbol that is
/// not in p's alphabet.
FrequencyReport frequency(const WorldPrefix &w, const FiniteProbabilitySpace &p);
inline FrequencyReport frequency(const WorldPrefix &w) { return frequency(w, w.governing); }

/// True iff no prefix of w lies in any level's word set.
bool avoids_test(const WorldPrefix &w, const std::vector<measure::FiniteMLTestLevel> &levels);

} // namespace typical::worlds
