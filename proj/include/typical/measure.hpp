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
 * Finite probability spaces, Bernoulli cylinder measures, prefix-free sets
 * and explicitly given Martin-Löf test levels.
 *
 * A symbol is a tuple of component names. Atomic alphabets use 1-tuples;
 * product alphabets concatenate their factors' components, so component
 * indices always refer to the flattened tuple.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace typical::measure {

using Symbol = std::vector<std::string>;

/// "a" for 1-tuples, "(a,b,c)" otherwise.
std::string to_string(const Symbol &s);

/// A finite string over an alphabet, as symbol indices.
using Word = std::vector<std::uint32_t>;

/// Explicit set of symbol indices of one space.
class Event {
  public:
    Event() = default;
    Event(std::size_t alphabet_size, std::vector<std::uint32_t> members);

    static Event all(std::size_t alphabet_size);
    static Event none(std::size_t alphabet_size);

    [[nodiscard]] bool contains(std::uint32_t index) const {
        return index < mask_.size() && mask_[index];
    }
    [[nodiscard]] std::size_t alphabet_size() const { return mask_.size(); }
    [[nodiscard]] std::vector<std::uint32_t> members() const;
    [[nodiscard]] bool empty() const;

  private:
    std::vector<bool> mask_;
};

class FiniteProbabilitySpace {
  public:
    FiniteProbabilitySpace() = default;
    /// Throws InvalidArgument unless probs are >= 0, sum to 1 within 1e-12,
    /// and symbols are distinct with a common arity.
    FiniteProbabilitySpace(std::vector<Symbol> alphabet, std::vector<double> probs);

    /// Atomic symbols from plain names.
    static FiniteProbabilitySpace from_names(std::vector<std::string> names,
                                             std::vector<double> probs);
    static FiniteProbabilitySpace uniform(std::vector<std::string> names);
    /// Two-point space over {"0","1"} with P(1) = p.
    static FiniteProbabilitySpace coin(double p);

    [[nodiscard]] std::size_t size() const { return alphabet_.size(); }
    [[nodiscard]] std::size_t arity() const { return arity_; }
    [[nodiscard]] const std::vector<Symbol> &alphabet() const { return alphabet_; }
    [[nodiscard]] const std::vector<double> &probs() const { return probs_; }
    [[nodiscard]] const Symbol &symbol(std::size_t i) const { return alphabet_.at(i); }
    [[nodiscard]] double prob(std::size_t i) const { return probs_.at(i); }

    /// Throws InvalidArgument for a symbol outside the alphabet.
    [[nodiscard]] std::uint32_t index_of(const Symbol &s) const;
    [[nodiscard]] std::uint32_t index_of(std::string_view atomic_name) const;

    /// Probability of an event.
    [[nodiscard]] double prob(const Event &e) const;
    /// Event of all symbols satisfying the predicate.
    [[nodiscard]] Event event(const std::function<bool(const Symbol &)> &pred) const;
    [[nodiscard]] Event event_of(const std::vector<Symbol> &members) const;

    /// Parses a string whose characters are single-character symbol names.
    [[nodiscard]] Word word(std::string_view text) const;

    /// The space restricted to symbols of positive probability.
    [[nodiscard]] FiniteProbabilitySpace support() const;

  private:
    std::vector<Symbol> alphabet_;
    std::vector<double> probs_;
    std::size_t arity_ = 1;
};

/// Absolute tolerance for comparing probabilities built from the closed forms.
inline constexpr double kProbabilityTolerance = 1e-12;

/// True when alphabets agree symbolwise and probs agree within tol.
bool approx_equal(const FiniteProbabilitySpace &a, const FiniteProbabilitySpace &b,
                  double tol = kProbabilityTolerance);

/// Finite set of finite words.
class PrefixSet {
  public:
    PrefixSet() = default;
    explicit PrefixSet(std::vector<Word> words) : words_(std::move(words)) {}
    /// Each string is parsed with FiniteProbabilitySpace::word.
    static PrefixSet parse(const FiniteProbabilitySpace &space,
                           std::initializer_list<std::string_view> strings);

    [[nodiscard]] const std::vector<Word> &words() const { return words_; }
    [[nodiscard]] bool empty() const { return words_.empty(); }

    /// Sort by length (then lexicographically) and drop every word that has
    /// an earlier kept word as a prefix. The cylinder union is unchanged.
    [[nodiscard]] PrefixSet prefix_free_reduce() const;
    /// Whether some member is a prefix of `w`.
    [[nodiscard]] bool covers(std::span<const std::uint32_t> w) const;

  private:
    std::vector<Word> words_;
};

/// r : Omega^* -> [0,1] with r(empty) = 1 and r(s) = sum_a r(sa).
class PrefixMeasureRep {
  public:
    virtual ~PrefixMeasureRep() = default;
    [[nodiscard]] virtual std::size_t alphabet_size() const = 0;
    [[nodiscard]] virtual double operator()(std::span<const std::uint32_t> w) const = 0;
};

/// The Bernoulli representation r(s) = P(s_1)...P(s_n).
class BernoulliRep final : public PrefixMeasureRep {
  public:
    explicit BernoulliRep(FiniteProbabilitySpace space) : space_(std::move(space)) {}
    [[nodiscard]] std::size_t alphabet_size() const override { return space_.size(); }
    [[nodiscard]] double operator()(std::span<const std::uint32_t> w) const override;
    [[nodiscard]] const FiniteProbabilitySpace &space() const { return space_; }

  private:
    FiniteProbabilitySpace space_;
};

/// Largest |r(s) - sum_a r(sa)| over all words up to `depth`, together with
/// |r(empty) - 1|.
double consistency_defect(const PrefixMeasureRep &r, std::size_t depth);

/// mu_r of the open set generated by `s`.
double induced_measure(const PrefixMeasureRep &r, const PrefixSet &s);

/// Explicitly given level n of a Martin-Löf test.
struct FiniteMLTestLevel {
    unsigned level = 1;
    PrefixSet strings;
};

/// lambda_P([[sigma]]): product of per-symbol probabilities.
double cylinder_prob(const FiniteProbabilitySpace &p, std::span<const std::uint32_t> sigma);
double cylinder_prob(const FiniteProbabilitySpace &p, std::string_view sigma);

/// lambda_P([[S]]) after prefix-free reduction.
double open_set_measure(const FiniteProbabilitySpace &p, const PrefixSet &s);

/// lambda_P([[C_n]]) < 2^-n, strictly.
bool verify_test_level(const FiniteMLTestLevel &t, const FiniteProbabilitySpace &p);

/// Q(x) = sum of P over tuples whose `component` equals x.
/// Alphabet order is first appearance. Throws for atomic alphabets.
FiniteProbabilitySpace marginal_space(const FiniteProbabilitySpace &p, std::size_t component);
/// Marginal onto several components, kept in the given order.
FiniteProbabilitySpace marginal_space(const FiniteProbabilitySpace &p,
                                      std::span<const std::size_t> components);

/// P_B(a) = P(a)/P(B) on the members of B (in alphabet order).
/// Throws InvalidArgument when P(B) = 0.
FiniteProbabilitySpace conditional_space(const FiniteProbabilitySpace &p, const Event &b);

/// Two-point space over {"0","1"} with (P^A)(1) = P(A).
FiniteProbabilitySpace mixing_space(const FiniteProbabilitySpace &p, const Event &a);

/// Product over concatenated tuples, first factor most significant.
FiniteProbabilitySpace product_space(std::span<const FiniteProbabilitySpace> spaces);

} // namespace typical::measure
