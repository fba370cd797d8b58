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

#include "typical/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>

#include "typical/error.hpp"

namespace typical::scenarios {

namespace {

std::string join(const std::vector<std::string> &parts) {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i == 0 ? "" : ",") + parts[i];
    }
    return out + ")";
}

std::size_t operation_dim(const Operation &op) {
    if (const auto *fam = std::get_if<MeasurementFamily>(&op)) {
        return fam->dim();
    }
    return std::get<Matrix>(op).rows();
}

// Walks the branch tree shared by compile() and distribution(). `apply`
// maps an accumulated value through one operator on the stage targets;
// `weight` measures it; `leaf` receives each surviving tuple.
template <class T> class BranchWalker {
  public:
    using Apply = std::function<T(const Matrix &, const std::vector<std::size_t> &, const T &)>;
    using Weight = std::function<double(const T &)>;
    using Leaf = std::function<void(std::size_t, T)>;

    BranchWalker(const Scenario &s, Apply apply, Weight weight, Leaf leaf)
        : s_(s), apply_(std::move(apply)), weight_(std::move(weight)), leaf_(std::move(leaf)),
          alphabets_(s.component_alphabets()), outcome_(s.stages.size()) {
        const auto rec = s.recorded_stages();
        component_of_.assign(s.stages.size(), rec.size());
        for (std::size_t c = 0; c < rec.size(); ++c) {
            component_of_[rec[c]] = c;
        }
    }

    void walk(T start) { visit(0, 0, std::move(start)); }

  private:
    void visit(std::size_t stage, std::size_t index, T value) {
        if (stage == s_.stages.size()) {
            leaf_(index, std::move(value));
            return;
        }
        const Stage &st = s_.stages[stage];
        std::vector<std::string> key;
        for (auto c : st.control_stages) {
            key.push_back(outcome_[c]);
        }
        const auto it = st.branches.find(key);
        if (it == st.branches.end()) {
            // Unwired control value: the branch is lost and completeness fails.
            return;
        }
        if (const auto *u = std::get_if<Matrix>(&it->second)) {
            visit(stage + 1, index, apply_(*u, st.targets, value));
            return;
        }
        const auto &fam = std::get<MeasurementFamily>(it->second);
        const auto &alphabet = alphabets_[component_of_[stage]];
        for (std::size_t j = 0; j < fam.size(); ++j) {
            T next = apply_(fam.op(j), st.targets, value);
            if (weight_(next) <= quantum::kZeroWeight) {
                continue;
            }
            const auto pos = static_cast<std::size_t>(
                std::find(alphabet.begin(), alphabet.end(), fam.outcomes()[j]) - alphabet.begin());
            outcome_[stage] = fam.outcomes()[j];
            visit(stage + 1, index * alphabet.size() + pos, std::move(next));
        }
    }

    const Scenario &s_;
    Apply apply_;
    Weight weight_;
    Leaf leaf_;
    std::vector<std::vector<std::string>> alphabets_;
    std::vector<std::size_t> component_of_;
    std::vector<std::string> outcome_;
};

struct TupleSpace {
    std::vector<Symbol> tuples;
};

TupleSpace enumerate_tuples(const Scenario &s, std::size_t cap) {
    const auto alphabets = s.component_alphabets();
    std::size_t total = 1;
    for (const auto &a : alphabets) {
        if (total > cap / a.size()) {
            throw CapExceeded("outcome tuple space exceeds the cap of " + std::to_string(cap));
        }
        total *= a.size();
    }
    if (total > cap) {
        throw CapExceeded("outcome tuple space of " + std::to_string(total) +
                          " exceeds the cap of " + std::to_string(cap));
    }
    TupleSpace out;
    out.tuples.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        Symbol t(alphabets.size());
        std::size_t rem = i;
        for (std::size_t c = alphabets.size(); c-- > 0;) {
            t[c] = alphabets[c][rem % alphabets[c].size()];
            rem /= alphabets[c].size();
        }
        out.tuples.push_back(std::move(t));
    }
    return out;
}

} // namespace

// --- Stage / Scenario -----------------------------------------------------------------

Stage Stage::measure(std::vector<std::size_t> targets, MeasurementFamily fam, std::string name) {
    Stage s;
    s.name = std::move(name);
    s.targets = std::move(targets);
    s.branches.emplace(std::vector<std::string>{}, std::move(fam));
    return s;
}

Stage Stage::evolve(std::vector<std::size_t> targets, Matrix u, std::string name) {
    Stage s;
    s.name = std::move(name);
    s.targets = std::move(targets);
    s.branches.emplace(std::vector<std::string>{}, std::move(u));
    return s;
}

Stage Stage::controlled(std::vector<std::size_t> targets, std::vector<std::size_t> controls,
                        std::map<std::vector<std::string>, Operation> branches, std::string name) {
    Stage s;
    s.name = std::move(name);
    s.targets = std::move(targets);
    s.control_stages = std::move(controls);
    s.branches = std::move(branches);
    return s;
}

bool Stage::recorded() const {
    return !branches.empty() &&
           std::holds_alternative<MeasurementFamily>(branches.begin()->second);
}

std::size_t Scenario::dim() const {
    std::size_t d = 1;
    for (auto f : factors) {
        if (f == 0 || d > linalg::kMaxDimension / f) {
            throw CapExceeded("joint dimension exceeds " + std::to_string(linalg::kMaxDimension));
        }
        d *= f;
    }
    return d;
}

void Scenario::validate() const {
    if (factors.empty()) {
        throw InvalidArgument("scenario has no factors");
    }
    for (auto f : factors) {
        if (f == 0) {
            throw InvalidArgument("factor dimensions must be positive");
        }
    }
    if (initial.dim() != dim()) {
        throw InvalidArgument("initial state has dimension " + std::to_string(initial.dim()) +
                              ", joint space has " + std::to_string(dim()));
    }
    if (stages.empty()) {
        throw InvalidArgument("scenario has no stages");
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const Stage &st = stages[i];
        const std::string where = "stage " + std::to_string(i);
        if (st.targets.empty()) {
            throw InvalidArgument(where + " has no targets");
        }
        std::size_t tdim = 1;
        std::set<std::size_t> seen;
        for (auto t : st.targets) {
            if (t >= factors.size() || !seen.insert(t).second) {
                throw InvalidArgument(where + " has an invalid or repeated target " +
                                      std::to_string(t));
            }
            tdim *= factors[t];
        }
        if (st.branches.empty()) {
            throw InvalidArgument(where + " has no operation");
        }
        const bool rec = st.recorded();
        for (const auto &[key, op] : st.branches) {
            if (std::holds_alternative<MeasurementFamily>(op) != rec) {
                throw InvalidArgument(where + " mixes unitary and measurement branches");
            }
            if (operation_dim(op) != tdim) {
                throw InvalidArgument(where + " operator dimension " +
                                      std::to_string(operation_dim(op)) +
                                      " does not match its targets (" + std::to_string(tdim) + ")");
            }
            if (const auto *u = std::get_if<Matrix>(&op)) {
                const double r = linalg::unitarity_residual(*u);
                if (r > quantum::kCompletenessTolerance) {
                    throw InvariantViolation(where + " evolution is not unitary (residual " +
                                             std::to_string(r) + ")");
                }
            }
            if (key.size() != st.control_stages.size()) {
                throw InvalidArgument(where + " branch key " + join(key) +
                                      " does not match its control stages");
            }
            for (std::size_t k = 0; k < key.size(); ++k) {
                const auto c = st.control_stages[k];
                if (c >= i || !stages[c].recorded()) {
                    throw InvalidArgument(where + " is controlled by stage " + std::to_string(c) +
                                          ", which is not an earlier measurement");
                }
                bool known = false;
                for (const auto &[ck, cop] : stages[c].branches) {
                    const auto &outs = std::get<MeasurementFamily>(cop).outcomes();
                    known = known || std::find(outs.begin(), outs.end(), key[k]) != outs.end();
                }
                if (!known) {
                    throw InvalidArgument(where + " branch key " + join(key) +
                                          " names an outcome that stage " + std::to_string(c) +
                                          " never produces");
                }
            }
        }
    }
    if (recorded_stages().empty()) {
        throw InvalidArgument("scenario records no measurement");
    }
}

std::vector<std::size_t> Scenario::recorded_stages() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (stages[i].recorded()) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::string> Scenario::component_names() const {
    std::vector<std::string> out;
    for (auto i : recorded_stages()) {
        out.push_back(stages[i].name.empty() ? "s" + std::to_string(i) : stages[i].name);
    }
    return out;
}

std::vector<std::vector<std::string>> Scenario::component_alphabets() const {
    std::vector<std::vector<std::string>> out;
    for (auto i : recorded_stages()) {
        std::vector<std::string> alphabet;
        for (const auto &[key, op] : stages[i].branches) {
            for (const auto &o : std::get<MeasurementFamily>(op).outcomes()) {
                if (std::find(alphabet.begin(), alphabet.end(), o) == alphabet.end()) {
                    alphabet.push_back(o);
                }
            }
        }
        out.push_back(std::move(alphabet));
    }
    return out;
}

Scenario Scenario::truncated(std::size_t n) const {
    Scenario out = *this;
    out.stages.resize(std::min(n, stages.size()));
    return out;
}

std::size_t tuple_cap() {
    const char *env = std::getenv("TYPICAL_WORLDS_CAP");
    if (env == nullptr || *env == '\0') {
        return kDefaultTupleCap;
    }
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) {
        throw InvalidArgument(std::string("TYPICAL_WORLDS_CAP is not a positive integer: ") + env);
    }
    return static_cast<std::size_t>(v);
}

// --- Compilation and enumeration -------------------------------------------------------

CompiledFamily compile(const Scenario &s, std::size_t cap) {
    s.validate();
    const TupleSpace ts = enumerate_tuples(s, cap);
    const std::size_t d = s.dim();
    std::vector<Matrix> ops(ts.tuples.size(), Matrix(d, d));
    BranchWalker<Matrix> walker(
        s,
        [&](const Matrix &op, const std::vector<std::size_t> &targets, const Matrix &acc) {
            return linalg::apply_on(op, targets, s.factors, acc);
        },
        [](const Matrix &m) {
            const double f = m.frobenius_norm();
            return f * f;
        },
        [&](std::size_t index, Matrix m) { ops[index] = std::move(m); });
    walker.walk(Matrix::identity(d));

    CompiledFamily out;
    out.components = s.component_names();
    std::vector<std::string> names;
    for (const auto &t : ts.tuples) {
        names.push_back(measure::to_string(t));
    }
    out.tuples = ts.tuples;
    out.family = MeasurementFamily(std::move(names), std::move(ops));
    return out;
}

OutcomeDistribution distribution(const Scenario &s, bool with_states, std::size_t cap) {
    s.validate();
    TupleSpace ts = enumerate_tuples(s, cap);
    std::vector<double> probs(ts.tuples.size(), 0.0);
    std::vector<std::optional<PureState>> states(ts.tuples.size());
    BranchWalker<Vector> walker(
        s,
        [&](const Matrix &op, const std::vector<std::size_t> &targets, const Vector &v) {
            return linalg::apply_on(op, targets, s.factors, v);
        },
        [](const Vector &v) {
            const double n = v.norm();
            return n * n;
        },
        [&](std::size_t index, Vector v) {
            const double n = v.norm();
            probs[index] = n * n;
            if (with_states) {
                states[index] = PureState::normalize(v);
            }
        });
    walker.walk(s.initial.vector());

    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    if (std::abs(total - 1.0) > quantum::kCompletenessTolerance) {
        throw InvariantViolation("completeness: branch weights sum to " + std::to_string(total));
    }
    for (double &p : probs) {
        p /= total;
    }
    return {s.component_names(), FiniteProbabilitySpace(std::move(ts.tuples), std::move(probs)),
            std::move(states)};
}

RunResult run(const Scenario &s, std::size_t n, unsigned threads) {
    if (n == 0) {
        n = s.repetitions;
    }
    if (n == 0) {
        throw InvalidArgument("run needs a positive repetition count");
    }
    RunResult out{distribution(s, false), {}};
    out.world = worlds::sample_world(out.exact.space.support(), s.seed, n, threads);
    return out;
}

PureState reduced_pure_state(const PureState &joint, const std::vector<std::size_t> &factors,
                             const std::vector<std::size_t> &keep) {
    const Matrix rho = linalg::partial_trace(joint.density(), factors, keep);
    const auto pairs = linalg::hermitian_eigenpairs(rho);
    const auto &top = pairs.back();
    if (top.value < 1.0 - 1e-9) {
        throw InvalidArgument("reduced state is mixed (largest eigenvalue " +
                              std::to_string(top.value) + ")");
    }
    // Fix the global phase so the first significant amplitude is real positive.
    Vector v = top.vector.normalized();
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) > 1e-9) {
            v = (std::abs(v[i]) / v[i]) * v;
            break;
        }
    }
    return PureState(std::move(v));
}

// --- Builtins --------------------------------------------------------------------------

namespace {

MeasurementFamily observable_family(const Matrix &m) {
    return quantum::projective_family(quantum::Observable(m));
}

} // namespace

Scenario sec9(const PureState &psi, const Matrix &observable) {
    Scenario s;
    s.factors = {psi.dim()};
    s.initial = psi;
    s.stages.push_back(Stage::measure({0}, observable_family(observable), "m"));
    return s;
}

Scenario sec10(const PureState &psi, const Matrix &a, const Matrix &b) {
    Scenario s;
    s.factors = {psi.dim()};
    s.initial = psi;
    s.stages.push_back(Stage::measure({0}, observable_family(a), "m"));
    s.stages.push_back(Stage::measure({0}, observable_family(b), "l"));
    return s;
}

Scenario sec11(const std::vector<PureState> &states, const std::vector<double> &weights,
               const Matrix &b) {
    if (states.empty() || states.size() != weights.size()) {
        throw InvalidArgument("sec11 needs one weight per state");
    }
    std::vector<std::string> names;
    for (std::size_t k = 0; k < states.size(); ++k) {
        names.push_back(std::to_string(k));
    }
    // Validates the weights as a probability vector.
    (void)FiniteProbabilitySpace::from_names(names, weights);
    const std::size_t k = states.size();
    const std::size_t d = states.front().dim();
    Vector joint(k * d);
    for (std::size_t m = 0; m < k; ++m) {
        if (states[m].dim() != d) {
            throw InvalidArgument("sec11 states differ in dimension");
        }
        joint = joint + linalg::Complex(std::sqrt(weights[m])) *
                            linalg::tensor_product(Vector::basis(k, m), states[m].vector());
    }
    Scenario s;
    s.factors = {k, d};
    s.initial = PureState::normalize(joint);
    s.stages.push_back(Stage::measure({0}, MeasurementFamily::computational(k), "m"));
    s.stages.push_back(Stage::measure({1}, observable_family(b), "l"));
    return s;
}

Scenario sec12_composite(const std::vector<PureState> &states,
                         const std::vector<Matrix> &observables) {
    if (states.empty() || states.size() != observables.size()) {
        throw InvalidArgument("sec12-composite needs one observable per system");
    }
    Scenario s;
    Vector joint = states.front().vector();
    s.factors.push_back(states.front().dim());
    for (std::size_t k = 1; k < states.size(); ++k) {
        joint = linalg::tensor_product(joint, states[k].vector());
        s.factors.push_back(states[k].dim());
    }
    s.initial = PureState::normalize(joint);
    for (std::size_t k = 0; k < states.size(); ++k) {
        s.stages.push_back(
            Stage::measure({k}, observable_family(observables[k]), "m" + std::to_string(k + 1)));
    }
    return s;
}

Scenario mixture(const PureState &psi_a, const Matrix &a, const PureState &psi_b,
                 const std::vector<Matrix> &b_by_outcome) {
    const MeasurementFamily fa = observable_family(a);
    if (b_by_outcome.size() != fa.size()) {
        throw InvalidArgument("mixture needs one B observable per outcome of A (" +
                              std::to_string(fa.size()) + ")");
    }
    std::map<std::vector<std::string>, Operation> branches;
    for (std::size_t k = 0; k < fa.size(); ++k) {
        branches.emplace(std::vector<std::string>{fa.outcomes()[k]},
                         observable_family(b_by_outcome[k]));
    }
    Scenario s;
    s.factors = {psi_a.dim(), psi_b.dim()};
    s.initial = PureState(linalg::tensor_product(psi_a.vector(), psi_b.vector()));
    s.stages.push_back(Stage::measure({0}, fa, "k"));
    s.stages.push_back(Stage::controlled({1}, {0}, std::move(branches), "l"));
    return s;
}

} // namespace typical::scenarios
