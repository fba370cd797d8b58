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

#include "typical/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "typical/error.hpp"

namespace typical::io {

using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;

namespace {

Complex complex_from_json(const json &x) {
    if (x.is_number()) {
        return {x.get<double>(), 0.0};
    }
    if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
        return {x[0].get<double>(), x[1].get<double>()};
    }
    throw InvalidArgument("expected a real number or a [re, im] pair, got " + x.dump());
}

std::vector<Complex> split_re_im(const json &j, std::size_t expected) {
    const auto re = j.at("re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) {
        im = j.at("im").get<std::vector<double>>();
    }
    if (re.size() != expected || im.size() != expected) {
        throw InvalidArgument("expected " + std::to_string(expected) + " entries in re/im");
    }
    std::vector<Complex> out(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        out[i] = {re[i], im[i]};
    }
    return out;
}

json symbol_json(const measure::Symbol &s) { return json(s); }

quantum::MeasurementFamily family_from_json(const json &j) {
    if (j.is_string()) {
        throw InvalidArgument("family must be an object, got " + j.dump());
    }
    if (j.contains("observable")) {
        return quantum::projective_family(quantum::Observable(matrix_from_json(j.at("observable"))));
    }
    if (j.contains("computational")) {
        return quantum::MeasurementFamily::computational(j.at("computational").get<std::size_t>());
    }
    std::vector<Matrix> ops;
    for (const auto &m : j.at("operators")) {
        ops.push_back(matrix_from_json(m));
    }
    std::vector<std::string> outcomes;
    if (j.contains("outcomes")) {
        outcomes = j.at("outcomes").get<std::vector<std::string>>();
    } else {
        for (std::size_t i = 0; i < ops.size(); ++i) {
            outcomes.push_back(std::to_string(i));
        }
    }
    if (outcomes.size() != ops.size()) {
        throw InvalidArgument("family has " + std::to_string(outcomes.size()) + " outcomes but " +
                              std::to_string(ops.size()) + " operators");
    }
    return {std::move(outcomes), std::move(ops)};
}

scenarios::Operation operation_from_json(const json &j) {
    if (j.contains("unitary")) {
        return matrix_from_json(j.at("unitary"));
    }
    if (j.contains("family")) {
        return family_from_json(j.at("family"));
    }
    throw InvalidArgument("branch needs a 'family' or a 'unitary': " + j.dump());
}

std::vector<std::string> split_key(const std::string &key) {
    std::vector<std::string> out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        out.push_back(part);
    }
    if (key.empty() || key.back() == ',') {
        out.push_back("");
    }
    return out;
}

scenarios::Stage stage_from_json(const json &j) {
    scenarios::Stage st;
    st.name = j.value("name", std::string());
    st.targets = j.at("targets").get<std::vector<std::size_t>>();
    if (j.contains("control_stage")) {
        st.control_stages = {j.at("control_stage").get<std::size_t>()};
    } else if (j.contains("control_stages")) {
        st.control_stages = j.at("control_stages").get<std::vector<std::size_t>>();
    }
    if (j.contains("branches")) {
        if (st.control_stages.empty()) {
            throw InvalidArgument("stage has branches but no control_stage");
        }
        for (const auto &[key, op] : j.at("branches").items()) {
            st.branches.emplace(split_key(key), operation_from_json(op));
        }
    } else {
        if (!st.control_stages.empty()) {
            throw InvalidArgument("controlled stage needs 'branches'");
        }
        st.branches.emplace(std::vector<std::string>{}, operation_from_json(j));
    }
    return st;
}

} // namespace

json to_json(const Vector &v) {
    json re = json::array();
    json im = json::array();
    for (auto x : v.entries()) {
        re.push_back(x.real());
        im.push_back(x.imag());
    }
    return {{"re", re}, {"im", im}};
}

Vector vector_from_json(const json &j) {
    if (j.is_object()) {
        const auto n = j.at("re").size();
        return Vector(split_re_im(j, n));
    }
    if (!j.is_array() || j.empty()) {
        throw InvalidArgument("vector must be a non-empty array or an {re, im} object");
    }
    std::vector<Complex> out;
    for (const auto &x : j) {
        out.push_back(complex_from_json(x));
    }
    return Vector(std::move(out));
}

json to_json(const Matrix &m) {
    json re = json::array();
    json im = json::array();
    for (auto x : m.entries()) {
        re.push_back(x.real());
        im.push_back(x.imag());
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const json &j) {
    if (j.is_object()) {
        const auto rows = j.at("rows").get<std::size_t>();
        const auto cols = j.at("cols").get<std::size_t>();
        return Matrix(rows, cols, split_re_im(j, rows * cols));
    }
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw InvalidArgument("matrix must be a nested array or a {rows, cols, re, im} object");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    std::vector<Complex> entries;
    for (const auto &row : j) {
        if (!row.is_array() || row.size() != cols) {
            throw InvalidArgument("matrix rows differ in length");
        }
        for (const auto &x : row) {
            entries.push_back(complex_from_json(x));
        }
    }
    return Matrix(rows, cols, std::move(entries));
}

Vector parse_vector(std::string_view text) {
    std::vector<Complex> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        std::string item(text.substr(start, end - start));
        std::erase(item, ' ');
        if (item.empty()) {
            throw InvalidArgument("empty entry in vector '" + std::string(text) + "'");
        }
        Complex value;
        const char *first = item.data();
        const char *last = item.data() + item.size();
        double x = 0.0;
        auto [p, ec] = std::from_chars(first, last, x);
        if (ec != std::errc()) {
            // Bare "i", "-i", "+i".
            if (item == "i" || item == "+i") {
                value = {0.0, 1.0};
            } else if (item == "-i") {
                value = {0.0, -1.0};
            } else {
                throw InvalidArgument("cannot parse complex entry '" + item + "'");
            }
        } else if (p == last) {
            value = {x, 0.0};
        } else if (*p == 'i' && p + 1 == last) {
            value = {0.0, x};
        } else {
            double y = 1.0;
            const char *q = p;
            if ((*q == '+' || *q == '-') && q + 2 == last && q[1] == 'i') {
                y = *q == '-' ? -1.0 : 1.0;
                q += 1;
            } else {
                if (*q == '+') {
                    ++q;
                }
                auto [r, ec2] = std::from_chars(q, last, y);
                if (ec2 != std::errc()) {
                    throw InvalidArgument("cannot parse complex entry '" + item + "'");
                }
                q = r;
            }
            if (q + 1 != last || *q != 'i') {
                throw InvalidArgument("cannot parse complex entry '" + item + "'");
            }
            value = {x, y};
        }
        out.push_back(value);
        start = end + 1;
    }
    return Vector(std::move(out));
}

json to_json(const measure::FiniteProbabilitySpace &p) {
    json alphabet = json::array();
    for (const auto &s : p.alphabet()) {
        alphabet.push_back(s.size() == 1 ? json(s.front()) : symbol_json(s));
    }
    return {{"alphabet", alphabet}, {"probs", p.probs()}};
}

json to_json(const scenarios::OutcomeDistribution &d) {
    json tuples = json::array();
    for (std::size_t i = 0; i < d.space.size(); ++i) {
        tuples.push_back({{"tuple", symbol_json(d.space.symbol(i))}, {"prob", d.space.prob(i)}});
    }
    return {{"components", d.components}, {"tuples", tuples}};
}

json to_json(const worlds::FrequencyReport &f) {
    json cells = json::array();
    for (std::size_t i = 0; i < f.reference.size(); ++i) {
        cells.push_back({{"symbol", measure::to_string(f.reference.symbol(i))},
                         {"count", f.counts[i]},
                         {"empirical", f.empirical[i]},
                         {"reference", f.reference.prob(i)}});
    }
    return {{"n", f.total},
            {"cells", cells},
            {"max_abs_deviation", f.max_abs_deviation},
            {"sigma_bound", f.sigma_bound},
            {"within_5_sigma", f.cells_within(5.0)}};
}

json to_json(const worlds::BatteryReport &b) {
    json tests = json::array();
    for (const auto &t : b.tests) {
        tests.push_back({{"name", t.name},
                         {"statistic", t.statistic},
                         {"p_value", t.p_value},
                         {"passed", t.passed}});
    }
    return {{"n", b.n},
            {"alpha", b.alpha},
            {"per_test_threshold", b.per_test_threshold},
            {"tests", tests},
            {"passed", b.passed}};
}

json to_json(const mixedstate::IndependenceReport &r) {
    return {{"verdict", mixedstate::to_string(r.verdict)},
            {"n", r.n},
            {"cells", r.cells},
            {"max_cell_z", r.max_cell_z},
            {"cell_threshold", r.cell_threshold},
            {"diagonal_mass", r.diagonal_mass},
            {"serial_p_value", r.serial_p_value}};
}

json to_json(const scenarios::BB84Report &r) {
    json out = {{"p", r.p},
                {"eve", r.eve},
                {"n", r.n},
                {"seed", r.seed},
                {"exact_space", to_json(r.exact_space)},
                {"exact_shared_probability", r.exact_shared_probability},
                {"exact_check_probability", r.exact_check_probability},
                {"exact_detection_probability", r.exact_detection_probability},
                {"sifted_out", r.sifted_out},
                {"shared_rounds", r.shared_rounds},
                {"check_rounds", r.check_rounds},
                {"mismatches", r.mismatches},
                {"shared_bit_rate", r.shared_bit_rate},
                {"detection_rate", r.detection_rate},
                {"flag_round", r.flag_round ? json(*r.flag_round) : json(nullptr)},
                {"kept_key_bits", r.kept_key_bits},
                {"kept_key_rate", r.kept_key_rate},
                {"key_errors", r.key_errors},
                {"discarded_bits", r.discarded_bits},
                {"quarantined_bits", r.quarantined_bits}};
    out["battery"] = r.battery ? to_json(*r.battery) : json(nullptr);
    return out;
}

json to_json(const worlds::WorldPrefix &w) {
    return {{"governing", to_json(w.governing)}, {"symbols", w.symbols}};
}

scenarios::Scenario scenario_from_json(const json &j) {
    try {
        scenarios::Scenario s;
        s.factors = j.at("factors").get<std::vector<std::size_t>>();
        s.initial = quantum::PureState(vector_from_json(j.at("initial")));
        for (const auto &st : j.at("stages")) {
            s.stages.push_back(stage_from_json(st));
        }
        s.repetitions = j.value("repetitions", std::size_t{0});
        s.seed = j.value("seed", std::uint64_t{0});
        s.validate();
        return s;
    } catch (const json::exception &e) {
        throw InvalidArgument(std::string("malformed scenario: ") + e.what());
    }
}

scenarios::Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open scenario file '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception &e) {
        throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
    }
    return scenario_from_json(j);
}

namespace {

void dump_into(const json &j, int indent, int depth, std::string &out) {
    const auto newline = [&](int d) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    const char *sep = indent >= 0 ? ": " : ":";
    switch (j.type()) {
    case json::value_t::number_float: {
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            out += "null";
            break;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
        // keep it a float on re-read
        if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) {
            out += ".0";
        }
        break;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            break;
        }
        out += '[';
        bool first = true;
        for (const auto &x : j) {
            if (!first) {
                out += ',';
            }
            first = false;
            newline(depth + 1);
            dump_into(x, indent, depth + 1, out);
        }
        newline(depth);
        out += ']';
        break;
    }
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            break;
        }
        out += '{';
        bool first = true;
        for (const auto &[k, v] : j.items()) {
            if (!first) {
                out += ',';
            }
            first = false;
            newline(depth + 1);
            out += json(k).dump();
            out += sep;
            dump_into(v, indent, depth + 1, out);
        }
        newline(depth);
        out += '}';
        break;
    }
    default:
        out += j.dump();
    }
}

} // namespace

std::string dump(const json &j, int indent) {
    std::string out;
    dump_into(j, indent, 0, out);
    return out;
}

} // namespace typical::io
