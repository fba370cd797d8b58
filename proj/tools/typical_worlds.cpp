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

// typical_worlds: exact distributions, sampled worlds, batteries and BB84
// reports for builtin or JSON-described measurement scenarios.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"

#include "typical/battery.hpp"
#include "typical/bb84.hpp"
#include "typical/builtins.hpp"
#include "typical/error.hpp"
#include "typical/json_io.hpp"
#include "typical/rng.hpp"
#include "typical/scenarios.hpp"
#include "typical/worlds.hpp"

namespace {

using namespace typical;
using nlohmann::json;

struct RunConfig {
    std::string command;
    std::string builtin;
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::optional<double> p;
    bool eve = false;
    std::string psi;
    std::string out;
    std::string format = "json";
    unsigned threads = 1;
    bool dump = false;
};

json config_json(const RunConfig &c) {
    json j = {{"command", c.command}, {"format", c.format}, {"threads", c.threads}};
    j["builtin"] = c.builtin.empty() ? json(nullptr) : json(c.builtin);
    j["scenario"] = c.scenario.empty() ? json(nullptr) : json(c.scenario);
    j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    j["n"] = c.n ? json(*c.n) : json(nullptr);
    j["p"] = c.p ? json(*c.p) : json(nullptr);
    j["psi"] = c.psi.empty() ? json(nullptr) : json(c.psi);
    j["tuple_cap"] = scenarios::tuple_cap();
    if (c.command == "bb84") {
        j["eve"] = c.eve;
    }
    if (c.command == "run") {
        j["dump"] = c.dump;
    }
    return j;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

void require_sampling(const RunConfig &c) {
    if (!c.seed || !c.n) {
        throw InvalidArgument(c.command + " needs --seed and --n");
    }
    if (*c.n == 0) {
        throw InvalidArgument("--n must be positive");
    }
}

scenarios::Scenario resolve(const RunConfig &c) {
    if (c.builtin.empty() == c.scenario.empty()) {
        throw InvalidArgument("give exactly one of --builtin or --scenario");
    }
    if (!c.scenario.empty()) {
        if (!c.psi.empty() || c.p) {
            throw InvalidArgument("--psi and --p apply only to builtins");
        }
        auto s = io::load_scenario(c.scenario);
        if (c.seed) {
            s.seed = *c.seed;
        }
        if (c.n) {
            s.repetitions = *c.n;
        }
        return s;
    }
    scenarios::BuiltinParams params;
    if (!c.psi.empty()) {
        params.psi = io::parse_vector(c.psi);
    }
    if (c.p) {
        if (c.builtin != "bb84" && c.builtin != "bb84-eve") {
            throw InvalidArgument("--p applies only to the bb84 builtins");
        }
        params.p = *c.p;
    }
    params.seed = c.seed.value_or(0);
    params.n = c.n.value_or(0);
    return scenarios::builtin(c.builtin, params);
}

json transform_entry(const std::string &name, worlds::WorldStream w, std::size_t n) {
    const auto prefix = w.take(n);
    json j = {{"name", name},
              {"governing", io::to_json(prefix.governing)},
              {"frequency", io::to_json(worlds::frequency(prefix))}};
    j["battery"] = prefix.size() >= worlds::kMinBatteryLength
                       ? io::to_json(worlds::statistical_battery(prefix))
                       : json(nullptr);
    return j;
}

// Returns the result payload; CSV text goes to `csv` when requested.
json execute(const RunConfig &c, std::string &csv) {
    const bool want_csv = c.format == "csv";
    if (want_csv && c.command != "distribution" && c.command != "run") {
        throw InvalidArgument("--format csv is available for distribution and run only");
    }
    if (c.command == "bb84") {
        require_sampling(c);
        if (!c.p) {
            throw InvalidArgument("bb84 needs --p");
        }
        return io::to_json(scenarios::bb84(*c.p, c.eve, *c.seed, *c.n, c.threads));
    }

    const auto s = resolve(c);
    if (c.command == "distribution") {
        const auto d = scenarios::distribution(s, false);
        if (want_csv) {
            std::ostringstream os;
            os << "tuple,prob\n";
            for (std::size_t i = 0; i < d.space.size(); ++i) {
                os << csv_field(measure::to_string(d.space.symbol(i))) << ',' << fmt(d.space.prob(i))
                   << '\n';
            }
            csv = os.str();
        }
        json j = io::to_json(d);
        j["completeness_residual"] = scenarios::compile(s).family.completeness_residual();
        return j;
    }

    require_sampling(c);
    const auto res = scenarios::run(s, *c.n, c.threads);
    const auto freq = worlds::frequency(res.world, res.world.governing);
    if (c.command == "run") {
        if (want_csv) {
            std::ostringstream os;
            os << "symbol,count,empirical,reference\n";
            for (std::size_t i = 0; i < freq.reference.size(); ++i) {
                os << csv_field(measure::to_string(freq.reference.symbol(i))) << ','
                   << freq.counts[i] << ',' << fmt(freq.empirical[i]) << ','
                   << fmt(freq.reference.prob(i)) << '\n';
            }
            csv = os.str();
        }
        json j = {{"exact", io::to_json(res.exact)}, {"frequency", io::to_json(freq)}};
        if (c.dump) {
            j["world"] = io::to_json(res.world);
        }
        return j;
    }
    if (c.command == "battery") {
        return {{"frequency", io::to_json(freq)},
                {"battery", io::to_json(worlds::statistical_battery(res.world))}};
    }

    // transforms: each output stream is checked against its claimed space.
    const auto &space = res.world.governing;
    const auto fresh = [&] { return worlds::generator(space, s.seed); };
    json list = json::array();
    for (std::size_t k = 0; k < space.arity() && space.arity() > 1; ++k) {
        list.push_back(transform_entry("marginalize[" + std::to_string(k) + "]",
                                       worlds::marginalize(fresh(), k), *c.n));
    }
    const auto &first = space.symbol(0);
    const auto event = space.event([&](const measure::Symbol &t) { return t[0] == first[0]; });
    const std::string label = "component 0 = " + first[0];
    if (space.prob(event) < 1.0) {
        list.push_back(transform_entry("condition[" + label + "]",
                                       worlds::condition(fresh(), event), *c.n));
    }
    list.push_back(transform_entry("characteristic[" + label + "]",
                                   worlds::characteristic(fresh(), event), *c.n));
    if (space.size() >= 2) {
        list.push_back(transform_entry("contract[" + measure::to_string(space.symbol(1)) + "->" +
                                           measure::to_string(space.symbol(0)) + "]",
                                       worlds::contract(fresh(), space.symbol(1), space.symbol(0)),
                                       *c.n));
    }
    list.push_back(
        transform_entry("shuffle[primes]", worlds::shuffle(fresh(), worlds::IndexMap::primes()), *c.n));
    return {{"source", io::to_json(freq)}, {"transforms", list}};
}

void add_common(CLI::App *sub, RunConfig &c) {
    sub->add_option("--builtin", c.builtin, "Builtin scenario name");
    sub->add_option("--scenario", c.scenario, "Scenario JSON file");
    sub->add_option("--seed", c.seed, "Seed (u64)");
    sub->add_option("--n", c.n, "Number of repetitions");
    sub->add_option("--p", c.p, "BB84 security parameter in (0,1)");
    sub->add_option("--psi", c.psi, "Measured state for sec9/sec10, e.g. \"0.6,0.8i\"");
    sub->add_option("--out", c.out, "Output path (default stdout)");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", c.threads, "Worker cap for sampling")->check(CLI::Range(1u, 256u));
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Typical-world sampling for multi-stage quantum measurements"};
    app.set_version_flag("--version", std::string(TYPICAL_VERSION));
    app.require_subcommand(1);
    RunConfig c;
    const std::pair<const char *, const char *> commands[] = {
        {"distribution", "Exact outcome-tuple distribution of one repetition"},
        {"run", "Sample n repetitions and report frequencies"},
        {"bb84", "Run BB84 with key-protocol replay"},
        {"battery", "Run the statistical battery on a sampled world"},
        {"transforms", "Apply the sequence transforms and check their claimed spaces"}};
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        add_common(sub, c);
        if (std::string(name) == "bb84") {
            sub->add_flag("--eve", c.eve, "Include the intercept-resend eavesdropper");
        }
        if (std::string(name) == "run") {
            sub->add_flag("--dump", c.dump, "Include the sampled world prefix");
        }
        sub->callback([&c, name] { c.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        std::string csv;
        json result = execute(c, csv);
        std::string text;
        if (c.format == "csv") {
            text = csv;
        } else {
            json report = {{"tool", "typical_worlds"},
                           {"version", TYPICAL_VERSION},
                           {"generator", rng::kGeneratorId},
                           {"config", config_json(c)},
                           {"result", std::move(result)}};
            text = io::dump(report) + "\n";
        }
        if (c.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f || !(f << text)) {
                throw InvalidArgument("cannot write '" + c.out + "'");
            }
        }
        return 0;
    } catch (const InvalidArgument &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const CapExceeded &e) {
        std::cerr << "config error (cap exceeded): " << e.what() << '\n';
        return 2;
    } catch (const InvariantViolation &e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return 1;
    } catch (const ConvergenceError &e) {
        std::cerr << "invariant violated (convergence): " << e.what() << '\n';
        return 1;
    }
}
