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

#include "typical/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "typical/error.hpp"

namespace typical::measure {

std::string to_string(const Symbol &s) {
    if (s.size() == 1) {
        return s.front();
    }
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += s[i];
    }
    out += ')';
    return out;
}

// --- Event --------------------------------------------------------------------

Event::Event(std::size_t alphabet_size, std::vector<std::uint32_t> members)
    : mask_(alphabet_size, false) {
    for (auto m : members) {
        if (m >= alphabet_size) {
            throw InvalidArgument("event member outside the alphabet");
        }
        mask_[m] = true;
    }
}

Event Event::all(std::size_t alphabet_size) {
    std::vector<std::uint32_t> members(alphabet_size);
    std::iota(members.begin(), members.end(), 0U);
    return {alphabet_size, std::move(members)};
}

Event Event::none(std::size_t alphabet_size) { return {alphabet_size, {}}; }

std::vector<std::uint32_t> Event::members() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i]) {
            out.push_back(i);
        }
    }
    return out;
}

bool Event::empty() const { return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; }); }

// --- FiniteProbabilitySpace -------------------------------------------------------

FiniteProbabilitySpace::FiniteProbabilitySpace(std::vector<Symbol> alphabet,
                                               std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
    if (alphabet_.empty()) {
        throw InvalidArgument("alphabet must be nonempty");
    }
    if (alphabet_.size() != probs_.size()) {
        throw InvalidArgument("alphabet and probability vector differ in length");
    }
    arity_ = alphabet_.front().size();
    if (arity_ == 0) {
        throw InvalidArgument("symbols must have at least one component");
    }
    std::set<Symbol> seen;
    for (const auto &s : alphabet_) {
        if (s.size() != arity_) {
            throw InvalidArgument("symbols must share a common arity");
        }
        if (!seen.insert(s).second) {
            throw InvalidArgument("duplicate symbol " + to_string(s));
        }
    }
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InvalidArgument("probabilities must be finite and non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
        throw InvalidArgument("probabilities sum to " + std::to_string(total) + ", not 1");
    }
}

FiniteProbabilitySpace FiniteProbabilitySpace::from_names(std::vector<std::string> names,
                                                          std::vector<double> probs) {
    std::vector<Symbol> alphabet;
    alphabet.reserve(names.size());
    for (auto &n : names) {
        alphabet.push_back({std::move(n)});
    }
    return {std::move(alphabet), std::move(probs)};
}

FiniteProbabilitySpace FiniteProbabilitySpace::uniform(std::vector<std::string> names) {
    const std::size_t n = names.size();
    if (n == 0) {
        throw InvalidArgument("alphabet must be nonempty");
    }
    return from_names(std::move(names), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FiniteProbabilitySpace FiniteProbabilitySpace::coin(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("coin bias must lie in [0,1]");
    }
    return from_names({"0", "1"}, {1.0 - p, p});
}

std::uint32_t FiniteProbabilitySpace::index_of(const Symbol &s) const {
    for (std::uint32_t i = 0; i < alphabet_.size(); ++i) {
        if (alphabet_[i] == s) {
            return i;
        }
    }
    throw InvalidArgument("unknown symbol " + to_string(s));
}

std::uint32_t FiniteProbabilitySpace::index_of(std::string_view atomic_name) const {
    return index_of(Symbol{std::string(atomic_name)});
}

double FiniteProbabilitySpace::prob(const Event &e) const {
    if (e.alphabet_size() != size()) {
        throw InvalidArgument("event belongs to a different alphabet");
    }
    double s = 0.0;
    for (auto i : e.members()) {
        s += probs_[i];
    }
    return s;
}

Event FiniteProbabilitySpace::event(const std::function<bool(const Symbol &)> &pred) const {
    std::vector<std::uint32_t> members;
    for (std::uint32_t i = 0; i < alphabet_.size(); ++i) {
        if (pred(alphabet_[i])) {
            members.push_back(i);
        }
    }
    return {size(), std::move(members)};
}

Event FiniteProbabilitySpace::event_of(const std::vector<Symbol> &members) const {
    std::vector<std::uint32_t> idx;
    for (const auto &m : members) {
        idx.push_back(index_of(m));
    }
    return {size(), std::move(idx)};
}

Word FiniteProbabilitySpace::word(std::string_view text) const {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        w.push_back(index_of(std::string_view(&c, 1)));
    }
    return w;
}

FiniteProbabilitySpace FiniteProbabilitySpace::support() const {
    std::vector<Symbol> alphabet;
    std::vector<double> probs;
    for (std::size_t i = 0; i < size(); ++i) {
        if (probs_[i] > 0.0) {
            alphabet.push_back(alphabet_[i]);
            probs.push_back(probs_[i]);
        }
    }
    return {std::move(alphabet), std::move(probs)};
}

bool approx_equal(const FiniteProbabilitySpace &a, const FiniteProbabilitySpace &b, double tol) {
    if (a.alphabet() != b.alphabet()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a.prob(i) - b.prob(i)) > tol) {
            return false;
        }
    }
    return true;
}

// --- Prefix sets ----------------------------------------------------------------

PrefixSet PrefixSet::parse(const FiniteProbabilitySpace &space,
                           std::initializer_list<std::string_view> strings) {
    std::vector<Word> words;
    for (auto s : strings) {
        words.push_back(space.word(s));
    }
    return PrefixSet(std::move(words));
}

PrefixSet PrefixSet::prefix_free_reduce() const {
    std::vector<Word> sorted = words_;
    std::sort(sorted.begin(), sorted.end(), [](const Word &a, const Word &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    PrefixSet kept;
    for (auto &w : sorted) {
        if (!kept.covers(w)) {
            kept.words_.push_back(std::move(w));
        }
    }
    return kept;
}

bool PrefixSet::covers(std::span<const std::uint32_t> w) const {
    return std::any_of(words_.begin(), words_.end(), [&](const Word &p) {
        return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
    });
}

// --- Prefix measure representations -----------------------------------------------

double BernoulliRep::operator()(std::span<const std::uint32_t> w) const {
    return cylinder_prob(space_, w);
}

double consistency_defect(const PrefixMeasureRep &r, std::size_t depth) {
    const std::size_t k = r.alphabet_size();
    double worst = std::abs(r(Word{}) - 1.0);
    std::vector<Word> frontier{Word{}};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<Word> next;
        for (const auto &w : frontier) {
            double children = 0.0;
            for (std::uint32_t a = 0; a < k; ++a) {
                Word child = w;
                child.push_back(a);
                children += r(child);
                next.push_back(std::move(child));
            }
            worst = std::max(worst, std::abs(r(w) - children));
        }
        frontier = std::move(next);
    }
    return worst;
}

double induced_measure(const PrefixMeasureRep &r, const PrefixSet &s) {
    double total = 0.0;
    const PrefixSet reduced = s.prefix_free_reduce();
    for (const auto &w : reduced.words()) {
        total += r(w);
    }
    return total;
}

double cylinder_prob(const FiniteProbabilitySpace &p, std::span<const std::uint32_t> sigma) {
    double prod = 1.0;
    for (auto i : sigma) {
        if (i >= p.size()) {
            throw InvalidArgument("symbol index outside the alphabet");
        }
        prod *= p.prob(i);
    }
    return prod;
}

double cylinder_prob(const FiniteProbabilitySpace &p, std::string_view sigma) {
    return cylinder_prob(p, p.word(sigma));
}

double open_set_measure(const FiniteProbabilitySpace &p, const PrefixSet &s) {
    return induced_measure(BernoulliRep(p), s);
}

bool verify_test_level(const FiniteMLTestLevel &t, const FiniteProbabilitySpace &p) {
    return open_set_measure(p, t.strings) < std::ldexp(1.0, -static_cast<int>(t.level));
}

// --- Derived spaces -------------------------------------------------------------

FiniteProbabilitySpace marginal_space(const FiniteProbabilitySpace &p,
                                      std::span<const std::size_t> components) {
    if (p.arity() < 2) {
        throw InvalidArgument("marginal of a non-product alphabet");
    }
    if (components.empty()) {
        throw InvalidArgument("marginal needs at least one component");
    }
    for (auto c : components) {
        if (c >= p.arity()) {
            throw InvalidArgument("marginal component out of range");
        }
    }
    std::vector<Symbol> alphabet;
    std::vector<double> probs;
    std::map<Symbol, std::size_t> where;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Symbol key;
        for (auto c : components) {
            key.push_back(p.symbol(i)[c]);
        }
        auto [it, inserted] = where.emplace(key, alphabet.size());
        if (inserted) {
            alphabet.push_back(std::move(key));
            probs.push_back(0.0);
        }
        probs[it->second] += p.prob(i);
    }
    return {std::move(alphabet), std::move(probs)};
}

FiniteProbabilitySpace marginal_space(const FiniteProbabilitySpace &p, std::size_t component) {
    const std::size_t c[] = {component};
    return marginal_space(p, c);
}

FiniteProbabilitySpace conditional_space(const FiniteProbabilitySpace &p, const Event &b) {
    const double pb = p.prob(b);
    if (!(pb > 0.0)) {
        throw InvalidArgument("conditioning on an event of probability zero");
    }
    std::vector<Symbol> alphabet;
    std::vector<double> probs;
    for (auto i : b.members()) {
        alphabet.push_back(p.symbol(i));
        probs.push_back(p.prob(i) / pb);
    }
    return {std::move(alphabet), std::move(probs)};
}

FiniteProbabilitySpace mixing_space(const FiniteProbabilitySpace &p, const Event &a) {
    const double pa = std::clamp(p.prob(a), 0.0, 1.0);
    return FiniteProbabilitySpace::from_names({"0", "1"}, {1.0 - pa, pa});
}

FiniteProbabilitySpace product_space(std::span<const FiniteProbabilitySpace> spaces) {
    if (spaces.empty()) {
        throw InvalidArgument("product of an empty list of spaces");
    }
    std::vector<Symbol> alphabet = spaces.front().alphabet();
    std::vector<double> probs = spaces.front().probs();
    for (std::size_t f = 1; f < spaces.size(); ++f) {
        std::vector<Symbol> next_alphabet;
        std::vector<double> next_probs;
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            for (std::size_t j = 0; j < spaces[f].size(); ++j) {
                Symbol s = alphabet[i];
                const auto &t = spaces[f].symbol(j);
                s.insert(s.end(), t.begin(), t.end());
                next_alphabet.push_back(std::move(s));
                next_probs.push_back(probs[i] * spaces[f].prob(j));
            }
        }
        alphabet = std::move(next_alphabet);
        probs = std::move(next_probs);
    }
    return {std::move(alphabet), std::move(probs)};
}

} // namespace typical::measure
