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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "typical/battery.hpp"
#include "typical/bb84.hpp"
#include "typical/builtins.hpp"
#include "typical/json_io.hpp"
#include "typical/mixedstate.hpp"
#include "typical/scenarios.hpp"

namespace {

using namespace typical;
using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;
using measure::FiniteProbabilitySpace;
using measure::Symbol;
using mixedstate::DensityMatrix;
using mixedstate::MixedState;
using quantum::PureState;
using scenarios::Scenario;
using worlds::WorldPrefix;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double sigma5(double q, double n) { return 5.0 * std::sqrt(q * (1.0 - q) / n); }

const std::vector<std::uint64_t> kSeeds = {1, 2, 3};

// Events on BB84 tuples by column: (a, b, c, m, d) or (a, b, e, f, c, m, d).
struct Cols {
    std::size_t a, b, c, m, d;
};
Cols cols(bool eve) { return eve ? Cols{0, 1, 4, 5, 6} : Cols{0, 1, 2, 3, 4}; }

measure::Event shared_event(const FiniteProbabilitySpace &s, bool eve) {
    const Cols c = cols(eve);
    return s.event([&](const Symbol &t) { return t[c.b] == t[c.c] && t[c.d] == "0"; });
}
measure::Event check_event(const FiniteProbabilitySpace &s, bool eve) {
    const Cols c = cols(eve);
    return s.event([&](const Symbol &t) { return t[c.b] == t[c.c] && t[c.d] == "1"; });
}

Outcome c1_exact_no_eve() {
    Outcome o;
    double worst = 0.0, worst_s = 0.0;
    for (double p : {0.1, 0.5, 0.9}) {
        const auto d = scenarios::distribution(scenarios::bb84_scenario(p, false), false);
        for (std::size_t i = 0; i < d.space.size(); ++i) {
            const auto &t = d.space.symbol(i);
            const double ad2 = t[4] == "1" ? p : 1.0 - p;
            const double want = t[1] == t[2] ? (t[0] == t[3] ? ad2 / 8.0 : 0.0) : ad2 / 16.0;
            worst = std::max(worst, std::abs(d.space.prob(i) - want));
        }
        worst_s = std::max(worst_s,
                           std::abs(d.space.prob(shared_event(d.space, false)) - (1.0 - p) / 2.0));
    }
    o.pass = worst <= 1e-12 && worst_s <= 1e-12;
    o.detail = "max |P - A_d^2 case formula| = " + num(worst) + ", max |P(S) - (1-p)/2| = " +
               num(worst_s) + " over p in {0.1,0.5,0.9}";
    return o;
}

Outcome c2_exact_eve() {
    Outcome o;
    double worst_dt = 0.0, worst_et = 0.0, worst_case = 0.0;
    for (double p : {0.1, 0.5, 0.9}) {
        const auto d = scenarios::distribution(scenarios::bb84_scenario(p, true), false);
        const auto dt = check_event(d.space, true);
        worst_dt = std::max(worst_dt, std::abs(d.space.prob(dt) - p / 2.0));
        const auto given = measure::conditional_space(d.space, dt);
        const double et = given.prob(given.event([](const Symbol &t) { return t[0] != t[5]; }));
        worst_et = std::max(worst_et, std::abs(et - 0.25));
        for (std::size_t i = 0; i < given.size(); ++i) {
            const auto &t = given.symbol(i);
            const double want = t[1] == t[2] ? (t[0] == t[3] && t[0] == t[5] ? 1.0 / 8.0 : 0.0)
                                             : 1.0 / 32.0;
            worst_case = std::max(worst_case, std::abs(given.prob(i) - want));
        }
    }
    o.pass = worst_dt <= 1e-12 && worst_et <= 1e-12 && worst_case <= 1e-12;
    o.detail = "max |R(D_T) - p/2| = " + num(worst_dt) + ", max |R_DT(E_T) - 1/4| = " +
               num(worst_et) + ", max |R_DT - case formula| = " + num(worst_case);
    return o;
}

Outcome c3_sampled_rates() {
    Outcome o;
    const double n = 1e5;
    double worst_shared = 0.0, worst_detect = 0.0;
    for (double p : {0.1, 0.5, 0.9}) {
        for (auto seed : kSeeds) {
            for (bool eve : {false, true}) {
                const auto r = scenarios::bb84(p, eve, seed, 100000);
                const double q = (1.0 - p) / 2.0;
                const double zs = std::abs(r.shared_bit_rate - q) / (sigma5(q, n) / 5.0);
                worst_shared = std::max(worst_shared, zs);
                if (eve) {
                    const double zd = std::abs(r.detection_rate - 0.25) /
                                      (sigma5(0.25, static_cast<double>(r.check_rounds)) / 5.0);
                    worst_detect = std::max(worst_detect, zd);
                }
            }
        }
    }
    o.pass = worst_shared <= 5.0 && worst_detect <= 5.0;
    o.detail = "n=1e5, seeds {1,2,3}, p in {0.1,0.5,0.9}: worst shared-rate z = " +
               num(worst_shared) + ", worst detection-rate z (given D_T) = " + num(worst_detect);
    return o;
}

Outcome c4_certainty() {
    Outcome o;
    std::size_t checked = 0, violations = 0;
    for (double p : {0.1, 0.5, 0.9}) {
        for (auto seed : kSeeds) {
            const auto res = scenarios::run(scenarios::bb84_scenario(p, false, seed, 1000000));
            const auto &g = res.world.governing;
            const auto kept =
                worlds::condition(worlds::replay(res.world), shared_event(g, false)).take(1000000);
            for (std::size_t i = 0; i < kept.size(); ++i) {
                violations += kept.symbol_at(i)[0] != kept.symbol_at(i)[3] ? 1 : 0;
            }
            checked += kept.size();
        }
    }
    o.pass = violations == 0 && checked > 0;
    o.detail = std::to_string(checked) + " shared rounds over 9 worlds of n=1e6, " +
               std::to_string(violations) + " with a != m";
    return o;
}

Outcome c5_key_battery() {
    Outcome o;
    bool all = true;
    double worst_p = 1.0;
    for (auto seed : kSeeds) {
        const auto space =
            scenarios::distribution(scenarios::bb84_scenario(0.5, false), false).space.support();
        auto beta = worlds::marginalize(
            worlds::condition(worlds::generator(space, seed), shared_event(space, false)), 0);
        const auto prefix = beta.take(100000);
        const auto r = worlds::statistical_battery(prefix, FiniteProbabilitySpace::coin(0.5));
        all = all && r.passed && prefix.size() == 100000;
        for (const auto &t : r.tests) {
            worst_p = std::min(worst_p, t.p_value);
        }
    }
    o.pass = all;
    o.detail = "key stream beta, n=1e5 bits, seeds {1,2,3}, alpha=1e-4 (Bonferroni): smallest p = " +
               num(worst_p);
    return o;
}

// Trace distance between the frequency-weighted mixture of labelled states
// in `w` and `target`.
double sampled_distance(const WorldPrefix &w,
                        const std::function<PureState(const Symbol &)> &state_of,
                        const Matrix &target) {
    const MixedState ms = mixedstate::from_labeled_stream(w, state_of);
    return linalg::trace_distance(mixedstate::empirical_density(ms).matrix(), target);
}

Outcome c6_sec10() {
    Outcome o;
    std::mt19937_64 rng(610);
    double worst_exact = 0.0, worst_rho = 0.0, worst_cond = 0.0;
    for (int draw = 0; draw < 10; ++draw) {
        const std::size_t dim = 2 + draw % 3;
        const PureState psi(scenarios::random_unit_vector(dim, rng));
        const Matrix a = scenarios::random_hermitian(dim, rng);
        const Matrix b = scenarios::random_hermitian(dim, rng);
        Scenario s = scenarios::sec10(psi, a, b);
        s.seed = 100 + draw;
        const auto exact = scenarios::distribution(s);
        const quantum::Observable oa(a), ob(b);

        // Direct formula <psi|E_m F_l E_m|psi>.
        Matrix rho_a(dim, dim);
        for (const auto &em : oa.spectrum()) {
            rho_a += em.projector * psi.density() * em.projector;
            for (const auto &fl : ob.spectrum()) {
                const double direct = linalg::inner(
                    psi.vector(), em.projector * (fl.projector * (em.projector * psi.vector()))).real();
                const Symbol t{quantum::outcome_name(em.outcome), quantum::outcome_name(fl.outcome)};
                worst_exact = std::max(worst_exact,
                                       std::abs(exact.space.prob(exact.space.index_of(t)) - direct));
            }
        }

        const auto res = scenarios::run(s, 100000);
        // gamma_A: the marginal on m, labelled by E_m psi / |E_m psi|.
        const auto after_a = scenarios::distribution(s.truncated(1));
        const auto alpha = worlds::marginalize(worlds::replay(res.world), 0).take(100000);
        worst_rho = std::max(worst_rho, sampled_distance(alpha, [&](const Symbol &m) {
            return *after_a.branch_states[after_a.space.index_of(m)];
        }, rho_a));

        // Condition on the most probable l.
        const auto r_l = measure::marginal_space(exact.space, 1);
        std::size_t best = 0;
        for (std::size_t i = 1; i < r_l.size(); ++i) {
            best = r_l.prob(i) > r_l.prob(best) ? i : best;
        }
        const auto &l = r_l.symbol(best).front();
        const auto &g = res.world.governing;
        const auto given =
            worlds::condition(worlds::replay(res.world),
                              g.event([&](const Symbol &t) { return t[1] == l; }))
                .take(100000);
        Matrix f;
        for (const auto &term : ob.spectrum()) {
            if (quantum::outcome_name(term.outcome) == l) {
                f = term.projector;
            }
        }
        const auto post = mixedstate::post_measurement_mixed(DensityMatrix(rho_a), f);
        worst_cond = std::max(worst_cond, sampled_distance(given, [&](const Symbol &t) {
            return *exact.branch_states[exact.space.index_of(t)];
        }, post.density.matrix()));
    }
    o.pass = worst_exact <= 1e-12 && worst_rho < 0.01 && worst_cond < 0.01;
    o.detail = "10 draws, dims 2-4: max |P - <psi|E F E|psi>| = " + num(worst_exact) +
               ", max D(rho_A sampled, sum E|psi><psi|E) = " + num(worst_rho) +
               ", max D(conditioned, F rho_A F / tr) = " + num(worst_cond);
    return o;
}

Outcome c7_sec11() {
    Outcome o;
    std::mt19937_64 rng(711);
    double worst_exact = 0.0, worst_rho = 0.0;
    bool independent_sets = true;
    for (int draw = 0; draw < 6; ++draw) {
        const std::size_t dim = 2 + draw % 2;
        const std::size_t k = 2 + (draw / 2) % 2;
        std::vector<PureState> states;
        std::vector<double> weights;
        std::gamma_distribution<double> gamma(1.0);
        double total = 0.0;
        for (std::size_t m = 0; m < k; ++m) {
            states.emplace_back(scenarios::random_unit_vector(dim, rng));
            weights.push_back(0.05 + gamma(rng));
            total += weights.back();
        }
        for (double &w : weights) {
            w /= total;
        }
        independent_sets = independent_sets && mixedstate::pairwise_linear_independence(states);
        const Matrix b = scenarios::random_hermitian(dim, rng);
        Scenario s = scenarios::sec11(states, weights, b);
        s.seed = 200 + draw;
        const auto exact = scenarios::distribution(s, false);
        const quantum::Observable ob(b);
        Matrix rho_a(dim, dim);
        for (std::size_t m = 0; m < k; ++m) {
            rho_a += Complex(weights[m]) * states[m].density();
            for (const auto &fl : ob.spectrum()) {
                const double direct =
                    weights[m] * linalg::inner(states[m].vector(), fl.projector * states[m].vector()).real();
                const Symbol t{std::to_string(m), quantum::outcome_name(fl.outcome)};
                worst_exact = std::max(worst_exact,
                                       std::abs(exact.space.prob(exact.space.index_of(t)) - direct));
            }
        }
        // gamma_A: the system part of each post-A branch.
        const auto after_a = scenarios::distribution(s.truncated(1));
        const auto res = scenarios::run(s, 100000);
        const auto alpha = worlds::marginalize(worlds::replay(res.world), 0).take(100000);
        worst_rho = std::max(worst_rho, sampled_distance(alpha, [&](const Symbol &m) {
            return scenarios::reduced_pure_state(*after_a.branch_states[after_a.space.index_of(m)],
                                                 s.factors, {1});
        }, rho_a));
    }
    o.pass = independent_sets && worst_exact <= 1e-12 && worst_rho < 0.01;
    o.detail = "6 draws, dims 2-3, 2-3 states: max |P - p_m<psi_m|F_l|psi_m>| = " +
               num(worst_exact) + ", max D(rho_A sampled, sum p_m|psi_m><psi_m|) = " + num(worst_rho);
    return o;
}

Outcome c8_counterexamples() {
    Outcome o;
    // Correlated classical mixture: the same stream labels both qubits.
    const double pp = 0.5;
    const auto space = FiniteProbabilitySpace::from_names({"0", "1"}, {pp, 1.0 - pp});
    const MixedState g({PureState(Vector{1.0, 0.0}, "0"), PureState(Vector{0.0, 1.0}, "1")}, space,
                       worlds::sample_world(space, 8, 100000));
    const auto t = mixedstate::tensor_mixed({g, g});
    const Matrix rho12 = mixedstate::density_of(t.state).matrix();
    const Matrix rho1 = mixedstate::density_of(g).matrix();
    const double d_corr = linalg::trace_distance(rho12, linalg::tensor_product(rho1, rho1));
    // Oracle: rho12 - rho1 (x) rho2 is diagonal, so its eigenvalues are the
    // diagonal entries and half their absolute sum is the distance.
    const Matrix diff = rho12 - linalg::tensor_product(rho1, rho1);
    double oracle = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        oracle += 0.5 * std::abs(diff(i, i).real());
    }

    // Bell state: both reductions are I/2, so rho1 (x) rho2 = I/4.
    const PureState bell(Vector{1.0, 0.0, 0.0, 1.0}.normalized());
    const std::size_t dims[] = {2, 2};
    const std::size_t k0[] = {0};
    const std::size_t k1[] = {1};
    const Matrix r1 = linalg::partial_trace(bell.density(), dims, k0);
    const Matrix r2 = linalg::partial_trace(bell.density(), dims, k1);
    const double d_bell = linalg::trace_distance(bell.density(), linalg::tensor_product(r1, r2));
    o.pass = d_corr > 0.2 && std::abs(d_corr - oracle) < 1e-12 &&
             t.independence.verdict == mixedstate::Verdict::dependent &&
             std::abs(d_bell - 0.75) <= 1e-10;
    o.detail = "correlated p'=0.5: D(rho12, rho1 x rho2) = " + num(d_corr) + " (oracle " +
               num(oracle) + ", verdict " + mixedstate::to_string(t.independence.verdict) +
               "); Bell: D(|psi><psi|, I/4) = " + num(d_bell);
    return o;
}

Outcome c9_composite() {
    Outcome o;
    std::mt19937_64 rng(912);
    bool all_independent = true;
    double worst = 0.0;
    for (int draw = 0; draw < 3; ++draw) {
        std::vector<PureState> psis = {PureState(scenarios::random_unit_vector(2, rng)),
                                       PureState(scenarios::random_unit_vector(2, rng))};
        std::vector<Matrix> obs = {scenarios::random_hermitian(2, rng),
                                   scenarios::random_hermitian(2, rng)};
        Scenario s = scenarios::sec12_composite(psis, obs);
        s.seed = 300 + draw;
        const auto res = scenarios::run(s, 100000);
        std::vector<MixedState> gammas;
        Matrix product = Matrix::identity(1);
        for (std::size_t k = 0; k < 2; ++k) {
            const quantum::Observable ok(obs[k]);
            Matrix rho(2, 2);
            for (const auto &e : ok.spectrum()) {
                rho += e.projector * psis[k].density() * e.projector;
            }
            product = linalg::tensor_product(product, rho);
            const auto stream = worlds::marginalize(worlds::replay(res.world), k).take(100000);
            gammas.push_back(mixedstate::from_labeled_stream(stream, [&](const Symbol &m) {
                const auto &fam = quantum::projective_family(ok);
                return quantum::post_measurement(fam, psis[k], m.front());
            }));
        }
        const auto t = mixedstate::tensor_mixed(gammas);
        all_independent = all_independent && t.independence.verdict == mixedstate::Verdict::independent;
        worst = std::max(worst, linalg::trace_distance(mixedstate::empirical_density(t.state).matrix(),
                                                       product));
    }
    o.pass = all_independent && worst < 0.01;
    o.detail = "3 draws, K=2, 2x2, n=1e5: verdicts " +
               std::string(all_independent ? "all independent" : "NOT all independent") +
               ", max D(gamma1 x gamma2 sampled, rho1 x rho2) = " + num(worst);
    return o;
}

Outcome c10_mixture() {
    Outcome o;
    const PureState psi_a(Vector{0.6, 0.8});
    const PureState psi_b(Vector{std::cos(0.4), Complex(0.0, std::sin(0.4))});
    const std::vector<Matrix> bs = {quantum::gates::pauli_x(), quantum::gates::pauli_y()};
    Scenario s = scenarios::mixture(psi_a, quantum::gates::pauli_z(), psi_b, bs);
    s.seed = 10;
    const auto exact = scenarios::distribution(s);

    // Analytic path: sum_k Q(k) sum_l F_{k,l}|psi_B><psi_B|F_{k,l}.
    const auto fa = quantum::projective_family(quantum::Observable(quantum::gates::pauli_z()));
    Matrix analytic(2, 2);
    for (std::size_t k = 0; k < fa.size(); ++k) {
        const double q = quantum::born_weight(fa, psi_a, k);
        const quantum::Observable ob_k(bs[k]);
        for (const auto &f : ob_k.spectrum()) {
            analytic += Complex(q) * (f.projector * psi_b.density() * f.projector);
        }
    }
    // Scenario path: weighted B-reductions of the exact branch states.
    Matrix from_branches(2, 2);
    const auto b_state = [&](const Symbol &t) {
        return scenarios::reduced_pure_state(*exact.branch_states[exact.space.index_of(t)], s.factors, {1});
    };
    for (std::size_t i = 0; i < exact.space.size(); ++i) {
        if (exact.space.prob(i) > 0.0) {
            from_branches += Complex(exact.space.prob(i)) * b_state(exact.space.symbol(i)).density();
        }
    }
    // numpy oracle for these parameters.
    const Matrix frozen{{0.5, Complex(0.0, -0.12912409636191405)},
                        {Complex(0.0, 0.12912409636191405), 0.5}};
    const double d_exact = linalg::distance(analytic, from_branches);
    const double d_frozen = linalg::distance(analytic, frozen);
    const auto res = scenarios::run(s, 100000);
    const double d_sampled = sampled_distance(res.world, b_state, analytic);
    o.pass = d_exact <= 1e-12 && d_frozen <= 1e-12 && d_sampled < 0.01;
    o.detail = "|rho_B(analytic) - rho_B(branches)|_F = " + num(d_exact) + ", vs frozen oracle " +
               num(d_frozen) + ", D(sampled gamma_B, rho_B) at n=1e5 = " + num(d_sampled);
    return o;
}

Outcome c11_transforms() {
    Outcome o;
    const auto fair = FiniteProbabilitySpace::coin(0.5);
    const FiniteProbabilitySpace two[] = {fair, fair};
    const auto pair = measure::product_space(two);
    const auto skew = FiniteProbabilitySpace::from_names({"a", "b", "c"}, {0.2, 0.3, 0.5});
    struct Case {
        std::string name;
        std::function<worlds::WorldStream()> make;
        bool battery;
    };
    const auto first_zero = pair.event([](const Symbol &t) { return t[0] == "0"; });
    const std::vector<Case> cases = {
        {"contract fair pair", [&] { return worlds::contract(worlds::generator(pair, 1), pair.symbol(1), pair.symbol(0)); }, true},
        {"contract skewed", [&] { return worlds::contract(worlds::generator(skew, 2), {"b"}, {"a"}); }, false},
        {"marginalize", [&] { return worlds::marginalize(worlds::generator(pair, 3), 1); }, true},
        {"condition", [&] { return worlds::condition(worlds::generator(pair, 4), first_zero); }, true},
        {"characteristic", [&] { return worlds::characteristic(worlds::generator(pair, 5), first_zero); }, true},
        {"shuffle primes", [&] { return worlds::shuffle(worlds::generator(fair, 6), worlds::IndexMap::primes()); }, true},
        {"shuffle 2n", [&] { return worlds::shuffle(worlds::generator(fair, 7), worlds::IndexMap::affine(2, 0)); }, true},
        {"condition skewed", [&] { return worlds::condition(worlds::generator(skew, 8), skew.event_of({{"a"}, {"c"}})); }, false},
    };
    std::string failed;
    for (const auto &c : cases) {
        const auto prefix = c.make().take(100000);
        bool ok = prefix.size() == 100000 && worlds::frequency(prefix).cells_within(5.0);
        if (c.battery) {
            ok = ok && worlds::statistical_battery(prefix).passed;
        }
        if (!ok) {
            failed += (failed.empty() ? "" : ", ") + c.name;
        }
    }
    o.pass = failed.empty();
    o.detail = std::to_string(cases.size()) + " transform outputs at n=1e5 within 5 sigma of their claimed spaces" +
               (failed.empty() ? "; battery passes on all fair-generator outputs" : "; failed: " + failed);
    return o;
}

Outcome c12_properties() {
    Outcome o;
    std::mt19937_64 rng(1212);
    double worst_recon = 0.0, worst_unitary = 0.0, worst_branch = 0.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t dim = 1 + i % 8;
        const Matrix h = scenarios::random_hermitian(dim, rng);
        Matrix back(dim, dim);
        for (const auto &e : linalg::hermitian_eigendecomposition(h)) {
            back += Complex(e.value) * e.projector;
        }
        worst_recon = std::max(worst_recon, linalg::distance(h, back));
    }
    for (int i = 0; i < 200; ++i) {
        const std::size_t dim = 1 + i % 4;
        const std::size_t k = 1 + (i / 4) % 5;
        const auto fam = scenarios::random_family(dim, k, rng);
        const Matrix u = quantum::dilate_to_unitary(fam);
        worst_unitary = std::max(worst_unitary, linalg::unitarity_residual(u));
        const Vector psi = scenarios::random_unit_vector(dim, rng);
        const Vector out = u * linalg::tensor_product(psi, Vector::basis(k, 0));
        Vector want(dim * k);
        for (std::size_t m = 0; m < k; ++m) {
            want += linalg::tensor_product(fam.op(m) * psi, Vector::basis(k, m));
        }
        worst_branch = std::max(worst_branch, (out - want).norm());
    }
    const auto fair = FiniteProbabilitySpace::coin(0.5);
    const bool fixtures =
        measure::verify_test_level({2, measure::PrefixSet::parse(fair, {"000"})}, fair) &&
        !measure::verify_test_level({2, measure::PrefixSet::parse(fair, {"00", "010"})}, fair) &&
        measure::verify_test_level({1, measure::PrefixSet()}, FiniteProbabilitySpace::coin(0.3)) &&
        !measure::verify_test_level({2, measure::PrefixSet::parse(fair, {"00"})}, fair);
    o.pass = worst_recon < 1e-10 && worst_unitary < 1e-10 && worst_branch < 1e-10 && fixtures;
    o.detail = "200 Hermitian: max reconstruction residual " + num(worst_recon) +
               "; 200 families: max unitarity residual " + num(worst_unitary) +
               ", max branch error " + num(worst_branch) + "; ML-test fixtures " +
               (fixtures ? "exact" : "WRONG");
    return o;
}

Outcome c13_reproducibility() {
    Outcome o;
    const auto space = scenarios::distribution(scenarios::bb84_scenario(0.5, true), false).space.support();
    const auto w1 = worlds::sample_world(space, 99, 300000);
    const auto w2 = worlds::sample_world(space, 99, 300000);
    const auto w3 = worlds::sample_world(space, 99, 300000, 4);
    const std::string r1 = io::dump(io::to_json(scenarios::bb84(0.5, true, 99, 100000)));
    const std::string r2 = io::dump(io::to_json(scenarios::bb84(0.5, true, 99, 100000, 3)));
    o.pass = w1.to_lines() == w2.to_lines() && w1.symbols == w3.symbols && r1 == r2;
    o.detail = "world prefixes (n=3e5, 1 and 4 threads) and BB84 report JSON (" +
               std::to_string(r1.size()) + " bytes) byte-identical across runs";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"BB84 exact distribution without Eve", c1_exact_no_eve},
        {"BB84 exact distribution with Eve", c2_exact_eve},
        {"BB84 sampled shared-bit and detection rates", c3_sampled_rates},
        {"certainty: shared rounds have a = m", c4_certainty},
        {"key stream passes the battery", c5_key_battery},
        {"A-then-B pipeline", c6_sec10},
        {"ancilla pipeline with non-orthogonal states", c7_sec11},
        {"composition counterexamples", c8_counterexamples},
        {"independent composite systems", c9_composite},
        {"probabilistic mixture", c10_mixture},
        {"transform closure", c11_transforms},
        {"property checks", c12_properties},
        {"reproducibility", c13_reproducibility},
    };
    int failures = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of %zu criteria failed (%.1f s)\n", failures, criteria.size(), secs);
    return failures == 0 ? 0 : 1;
}
