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

#include "typical/worlds.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <set>

#include "typical/error.hpp"
#include "typical/rng.hpp"

namespace typical::worlds {

std::string WorldPrefix::to_lines() const {
    std::string out;
    for (auto s : symbols) {
        out += measure::to_string(governing.symbol(s));
        out += '\n';
    }
    return out;
}

WorldStream::WorldStream(FiniteProbabilitySpace governing, std::unique_ptr<Source> source)
    : governing_(std::move(governing)), source_(std::move(source)) {}

std::optional<std::uint32_t> WorldStream::next() {
    auto s = source_->next();
    if (s) {
        ++position_;
    }
    return s;
}

WorldPrefix WorldStream::take(std::size_t n) {
    WorldPrefix out{governing_, {}};
    out.symbols.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto s = next();
        if (!s) {
            break;
        }
        out.symbols.push_back(*s);
    }
    return out;
}

namespace {

class GeneratorSource final : public WorldStream::Source {
  public:
    GeneratorSource(const FiniteProbabilitySpace &p, std::uint64_t seed)
        : sampler_(p), seed_(seed), buffer_(rng::kChunkSize) {}

    std::optional<std::uint32_t> next() override {
        if (offset_ == buffer_.size() || emitted_ == 0) {
            if (emitted_ != 0) {
                ++chunk_;
            }
            rng::fill_chunk(sampler_, seed_, chunk_, buffer_);
            offset_ = 0;
        }
        ++emitted_;
        return buffer_[offset_++];
    }
    [[nodiscard]] std::uint64_t origin() const override { return emitted_; }

  private:
    rng::InverseCdf sampler_;
    std::uint64_t seed_;
    std::uint64_t chunk_ = 0;
    std::vector<std::uint32_t> buffer_;
    std::size_t offset_ = 0;
    std::uint64_t emitted_ = 0;
};

class ReplaySource final : public WorldStream::Source {
  public:
    explicit ReplaySource(std::vector<std::uint32_t> symbols) : symbols_(std::move(symbols)) {}
    std::optional<std::uint32_t> next() override {
        if (pos_ == symbols_.size()) {
            return std::nullopt;
        }
        return symbols_[pos_++];
    }
    [[nodiscard]] std::uint64_t origin() const override { return pos_; }

  private:
    std::vector<std::uint32_t> symbols_;
    std::size_t pos_ = 0;
};

// Symbolwise relabelling: upstream index -> output index.
class MapSource final : public WorldStream::Source {
  public:
    MapSource(WorldStream upstream, std::vector<std::uint32_t> table)
        : upstream_(std::move(upstream)), table_(std::move(table)) {}
    std::optional<std::uint32_t> next() override {
        auto s = upstream_.next();
        if (!s) {
            return std::nullopt;
        }
        return table_[*s];
    }
    [[nodiscard]] std::uint64_t origin() const override { return upstream_.position(); }

  private:
    WorldStream upstream_;
    std::vector<std::uint32_t> table_;
};

class FilterSource final : public WorldStream::Source {
  public:
    FilterSource(WorldStream upstream, Event keep, std::vector<std::uint32_t> table)
        : upstream_(std::move(upstream)), keep_(std::move(keep)), table_(std::move(table)) {}
    std::optional<std::uint32_t> next() override {
        while (auto s = upstream_.next()) {
            if (keep_.contains(*s)) {
                return table_[*s];
            }
        }
        return std::nullopt;
    }
    [[nodiscard]] std::uint64_t origin() const override { return upstream_.position(); }

  private:
    WorldStream upstream_;
    Event keep_;
    std::vector<std::uint32_t> table_;
};

class ShuffleSource final : public WorldStream::Source {
  public:
    ShuffleSource(WorldStream upstream, IndexMap f) : upstream_(std::move(upstream)), f_(std::move(f)) {}
    std::optional<std::uint32_t> next() override {
        const auto target = f_(k_ + 1);
        if (!target || *target == 0) {
            return std::nullopt;
        }
        if (*target <= base_) {
            throw InvalidArgument("shuffle map is not monotone although declared so");
        }
        while (base_ + buffer_.size() < *target) {
            auto s = upstream_.next();
            if (!s) {
                return std::nullopt;
            }
            buffer_.push_back(*s);
        }
        ++k_;
        last_origin_ = *target;
        const std::uint32_t out = buffer_[*target - base_ - 1];
        if (f_.monotone()) {
            // Positions up to f(k) are never requested again.
            const std::uint64_t drop = *target - base_;
            buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(drop));
            base_ += drop;
        }
        return out;
    }
    [[nodiscard]] std::uint64_t origin() const override { return last_origin_; }

  private:
    WorldStream upstream_;
    IndexMap f_;
    std::deque<std::uint32_t> buffer_;
    std::uint64_t base_ = 0; // upstream positions <= base_ have been dropped
    std::uint64_t k_ = 0;
    std::uint64_t last_origin_ = 0;
};

} // namespace

WorldStream generator(const FiniteProbabilitySpace &p, std::uint64_t seed) {
    return {p, std::make_unique<GeneratorSource>(p, seed)};
}

WorldPrefix sample_world(const FiniteProbabilitySpace &p, std::uint64_t seed, std::size_t n,
                         unsigned threads) {
    return {p, rng::sample_indices(p, seed, n, threads)};
}

WorldStream replay(WorldPrefix prefix) {
    return {std::move(prefix.governing), std::make_unique<ReplaySource>(std::move(prefix.symbols))};
}

WorldStream contract(WorldStream w, const Symbol &b, const Symbol &a) {
    const auto &p = w.governing();
    const std::uint32_t ib = p.index_of(b);
    const std::uint32_t ia = p.index_of(a);
    if (ia == ib) {
        throw InvalidArgument("contract: symbols must differ");
    }
    std::vector<Symbol> alphabet;
    std::vector<double> probs;
    std::vector<std::uint32_t> table(p.size());
    for (std::uint32_t i = 0; i < p.size(); ++i) {
        if (i == ib) {
            continue;
        }
        table[i] = static_cast<std::uint32_t>(alphabet.size());
        alphabet.push_back(p.symbol(i));
        probs.push_back(i == ia ? p.prob(ia) + p.prob(ib) : p.prob(i));
    }
    table[ib] = table[ia];
    FiniteProbabilitySpace q(std::move(alphabet), std::move(probs));
    return {std::move(q), std::make_unique<MapSource>(std::move(w), std::move(table))};
}

WorldStream marginalize(WorldStream w, std::size_t component) {
    const auto &p = w.governing();
    FiniteProbabilitySpace q = measure::marginal_space(p, component);
    std::vector<std::uint32_t> table(p.size());
    for (std::uint32_t i = 0; i < p.size(); ++i) {
        table[i] = q.index_of(Symbol{p.symbol(i)[component]});
    }
    return {std::move(q), std::make_unique<MapSource>(std::move(w), std::move(table))};
}

WorldStream condition(WorldStream w, const Event &b) {
    const auto &p = w.governing();
    FiniteProbabilitySpace q = measure::conditional_space(p, b);
    std::vector<std::uint32_t> table(p.size(), 0);
    std::uint32_t next = 0;
    for (auto i : b.members()) {
        table[i] = next++;
    }
    return {std::move(q), std::make_unique<FilterSource>(std::move(w), b, std::move(table))};
}

WorldStream characteristic(WorldStream w, const Event &a) {
    const auto &p = w.governing();
    FiniteProbabilitySpace q = measure::mixing_space(p, a);
    std::vector<std::uint32_t> table(p.size());
    for (std::uint32_t i = 0; i < p.size(); ++i) {
        table[i] = a.contains(i) ? 1U : 0U;
    }
    return {std::move(q), std::make_unique<MapSource>(std::move(w), std::move(table))};
}

// --- Index maps -----------------------------------------------------------------

IndexMap IndexMap::identity() {
    IndexMap m;
    m.f_ = [](std::uint64_t n) { return std::optional<std::uint64_t>(n); };
    m.description_ = "identity";
    return m;
}

IndexMap IndexMap::affine(std::uint64_t slope, std::uint64_t offset) {
    if (slope == 0) {
        throw InvalidArgument("affine index map needs slope >= 1");
    }
    IndexMap m;
    m.f_ = [slope, offset](std::uint64_t n) { return std::optional<std::uint64_t>(slope * n + offset); };
    m.description_ = "affine(" + std::to_string(slope) + "n+" + std::to_string(offset) + ")";
    return m;
}

IndexMap IndexMap::primes() {
    IndexMap m;
    m.f_ = [](std::uint64_t n) { return std::optional<std::uint64_t>(nth_prime(n)); };
    m.description_ = "primes";
    return m;
}

IndexMap IndexMap::table(std::vector<std::uint64_t> values) {
    std::set<std::uint64_t> seen;
    bool increasing = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0) {
            throw InvalidArgument("index table entries must be positive");
        }
        if (!seen.insert(values[i]).second) {
            throw InvalidArgument("index table is not injective (repeats " +
                                  std::to_string(values[i]) + ")");
        }
        if (i > 0 && values[i] <= values[i - 1]) {
            increasing = false;
        }
    }
    IndexMap m;
    m.monotone_ = increasing;
    m.description_ = "table[" + std::to_string(values.size()) + "]";
    m.f_ = [v = std::move(values)](std::uint64_t n) -> std::optional<std::uint64_t> {
        if (n == 0 || n > v.size()) {
            return std::nullopt;
        }
        return v[n - 1];
    };
    return m;
}

std::optional<std::uint64_t> IndexMap::operator()(std::uint64_t n) const { return f_(n); }

WorldStream shuffle(WorldStream w, IndexMap f) {
    FiniteProbabilitySpace q = w.governing();
    return {std::move(q), std::make_unique<ShuffleSource>(std::move(w), std::move(f))};
}

std::uint64_t nth_prime(std::uint64_t n) {
    static std::mutex mu;
    static std::vector<std::uint64_t> primes{2, 3};
    if (n == 0) {
        throw InvalidArgument("primes are indexed from 1");
    }
    std::lock_guard lock(mu);
    while (primes.size() < n) {
        std::uint64_t candidate = primes.back() + 2;
        for (;; candidate += 2) {
            bool is_prime = true;
            for (std::size_t i = 1; primes[i] * primes[i] <= candidate; ++i) {
                if (candidate % primes[i] == 0) {
                    is_prime = false;
                    break;
                }
            }
            if (is_prime) {
                break;
            }
        }
        primes.push_back(candidate);
    }
    return primes[n - 1];
}

// --- Frequencies ------------------------------------------------------------------

bool FrequencyReport::cells_within(double k) const {
    const double n = static_cast<double>(total);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double p = reference.prob(i);
        if (p == 0.0) {
            if (counts[i] != 0) {
                return false;
            }
            continue;
        }
        if (std::abs(empirical[i] - p) > k * std::sqrt(p * (1.0 - p) / n)) {
            return false;
        }
    }
    return true;
}

FiniteProbabilitySpace FrequencyReport::empirical_space() const {
    std::vector<double> probs = empirical;
    // Counts are exact integers; the division is the only rounding.
    double sum = 0.0;
    for (double p : probs) {
        sum += p;
    }
    for (double &p : probs) {
        p /= sum;
    }
    return {reference.alphabet(), std::move(probs)};
}

FrequencyReport frequency(const WorldPrefix &w, const FiniteProbabilitySpace &p) {
    if (w.symbols.empty()) {
        throw InvalidArgument("frequency of an empty prefix");
    }
    std::vector<std::uint64_t> raw(w.governing.size(), 0);
    for (auto s : w.symbols) {
        ++raw[s];
    }
    FrequencyReport r;
    r.reference = p;
    r.counts.assign(p.size(), 0);
    for (std::uint32_t i = 0; i < raw.size(); ++i) {
        if (raw[i] != 0) {
            r.counts[p.index_of(w.governing.symbol(i))] += raw[i];
        }
    }
    r.total = w.symbols.size();
    const double n = static_cast<double>(r.total);
    double widest = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        r.empirical.push_back(static_cast<double>(r.counts[i]) / n);
        r.max_abs_deviation = std::max(r.max_abs_deviation, std::abs(r.empirical[i] - p.prob(i)));
        widest = std::max(widest, std::sqrt(p.prob(i) * (1.0 - p.prob(i)) / n));
    }
    r.sigma_bound = 5.0 * widest;
    return r;
}

bool avoids_test(const WorldPrefix &w, const std::vector<measure::FiniteMLTestLevel> &levels) {
    return std::none_of(levels.begin(), levels.end(), [&](const measure::FiniteMLTestLevel &t) {
        return std::any_of(t.strings.words().begin(), t.strings.words().end(),
                           [&](const measure::Word &word) {
                               return word.size() <= w.symbols.size() &&
                                      std::equal(word.begin(), word.end(), w.symbols.begin());
                           });
    });
}

} // namespace typical::worlds
