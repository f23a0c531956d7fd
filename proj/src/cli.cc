// Copyright 2026 The hardy-realist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hardy/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "hardy/experiment.h"
#include "hardy/io.h"
#include "hardy/locality.h"
#include "hardy/qstate.h"
#include "hardy/realist.h"

namespace hardy::cli {

namespace {

using nlohmann::json;

/// Numbers in text output use the same 12 significant digits as JSON.
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", io::round12(x));
    return buf;
}

bool is_spin_label(const BasisLabel &b) {
    return b.name() == "z" || b.name() == "x";
}

/// "+-" for spin bases, "RG" otherwise.
std::string display_outcome(const SettingPair &bases, JointOutcome o) {
    auto side = [](const BasisLabel &b, Outcome x) {
        if (is_spin_label(b)) {
            return x == Outcome::R ? '+' : '-';
        }
        return outcome_char(x);
    };
    return {side(bases.left, o.left), side(bases.right, o.right)};
}

std::vector<BasisChange> builtin_changes() {
    return {z_to_x_change(), hardy_basis_change()};
}

std::optional<TwoQubitState> named_state(const std::string &name) {
    if (name == "phi-plus") {
        return phi_plus_state();
    }
    if (name == "phi-minus") {
        return phi_minus_state();
    }
    if (name == "hardy") {
        return hardy_state();
    }
    return std::nullopt;
}

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

SettingPair parse_basis_pair(const std::string &text) {
    if (text.size() != 2) {
        throw UsageError("Basis pair must be two labels, e.g. xx or 12; got '" + text + "'.");
    }
    return SettingPair{BasisLabel(std::string(1, text[0])), BasisLabel(std::string(1, text[1]))};
}

// ---------------------------------------------------------------- tables

/// Coefficient letters of the re-expanded Hardy state, per setting and outcome.
std::string coefficient_label(size_t setting, JointOutcome o) {
    static const std::map<std::pair<size_t, std::string>, std::string> labels{
        {{1, "RG"}, "a"}, {{1, "GR"}, "b"}, {{1, "RR"}, "c"},
        {{2, "RG"}, "d"}, {{2, "GR"}, "e"}, {{2, "RR"}, "f"},
        {{3, "RG"}, "g"}, {{3, "GR"}, "h"}, {{3, "RR"}, "j"}, {{3, "GG"}, "k"},
    };
    auto it = labels.find({setting, o.name()});
    return it == labels.end() ? "" : it->second;
}

std::array<TwoQubitState, 4> hardy_expansions() {
    const TwoQubitState psi = hardy_state();
    const BasisChange change = hardy_basis_change();
    return {
        psi,
        rebasis(psi, std::nullopt, change),
        rebasis(psi, change, std::nullopt),
        rebasis(psi, change, change),
    };
}

int cmd_tables(const std::string &format, std::ostream &out) {
    auto states = hardy_expansions();
    const Behavior &behavior = hardy_behavior();
    if (format == "json") {
        json coeffs = json::array();
        for (size_t k = 0; k < 4; k++) {
            for (const auto &o : kJointOutcomes) {
                std::string label = coefficient_label(k, o);
                coeffs.push_back({
                    {"setting", hardy_settings()[k].key()},
                    {"outcome", o.name()},
                    {"label", label.empty() ? json(nullptr) : json(label)},
                    {"amplitude", io::round12(states[k].amp(o))},
                    {"probability", io::round12(behavior.at(hardy_settings()[k], o))},
                });
            }
        }
        out << json{{"coefficients", coeffs}, {"behavior", io::behavior_to_json(behavior)}}.dump(2) << "\n";
    } else if (format == "csv") {
        out << "setting,outcome,label,amplitude,probability\n";
        for (size_t k = 0; k < 4; k++) {
            for (const auto &o : kJointOutcomes) {
                out << hardy_settings()[k].key() << ',' << o.name() << ',' << coefficient_label(k, o) << ','
                    << num(states[k].amp(o)) << ',' << num(behavior.at(hardy_settings()[k], o)) << '\n';
            }
        }
    } else {
        for (size_t k = 0; k < 4; k++) {
            const SettingPair &s = hardy_settings()[k];
            out << "setting " << s.left.name() << "," << s.right.name() << "\n";
            out << "  outcome  label  amplitude        probability\n";
            for (const auto &o : kJointOutcomes) {
                std::string label = coefficient_label(k, o);
                char line[128];
                std::snprintf(
                    line,
                    sizeof(line),
                    "  %-7s  %-5s  %-15s  %s\n",
                    o.name().c_str(),
                    label.empty() ? "-" : label.c_str(),
                    num(states[k].amp(o)).c_str(),
                    num(behavior.at(s, o)).c_str());
                out << line;
            }
        }
        out << "no-signaling residual: " << num(behavior.no_signaling_residual()) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    uint64_t trials = 1000000;
    uint64_t seed = 0;
    std::string model = "realist";
    std::string format = "text";
    std::string log_path;
    size_t workers = 1;
    uint64_t shard_size = kDefaultShardSize;
    double left_mode1 = 0.5;
    double right_mode1 = 0.5;
};

int cmd_simulate(const SimulateOptions &opt, std::ostream &out, std::ostream &err) {
    ExperimentConfig config;
    config.trials = opt.trials;
    config.seed = opt.seed;
    config.model = parse_model(opt.model);
    config.workers = opt.workers;
    config.shard_size = opt.shard_size;
    config.left_mode1_probability = opt.left_mode1;
    config.right_mode1_probability = opt.right_mode1;
    config.record_log = !opt.log_path.empty();
    config.validate();

    std::ofstream log;
    if (config.record_log) {
        log.open(opt.log_path);
        if (!log) {
            err << "error: cannot write trial log '" << opt.log_path << "'.\n";
            return kExitError;
        }
    }

    const Behavior &behavior = hardy_behavior();
    ExperimentResult result = run_experiment(config, behavior);
    ComparisonReport report = compare_tables(result.table, behavior);

    if (config.record_log) {
        io::write_trial_log_csv(log, *result.log);
        log.flush();
        if (!log) {
            err << "error: failed writing trial log '" << opt.log_path << "'.\n";
            return kExitError;
        }
    }

    if (opt.format == "json") {
        json j = {
            {"model", model_name(config.model)},
            {"trials", config.trials},
            {"seed", config.seed},
            {"shard_size", config.shard_size},
            {"setting_law", {{"left_mode1", config.left_mode1_probability}, {"right_mode1", config.right_mode1_probability}}},
            {"frequencies", io::frequency_table_to_json(result.table)},
            {"report", io::comparison_report_to_json(report)},
        };
        out << j.dump(2) << "\n";
    } else if (opt.format == "csv") {
        out << "setting,outcome,count,setting_total,expected,observed,z,pass\n";
        for (const auto &c : report.cells) {
            out << c.setting.key() << ',' << c.outcome.name() << ',' << c.count << ',' << c.setting_total << ','
                << num(c.expected) << ',' << num(c.observed) << ',' << (c.z_score ? num(*c.z_score) : "") << ','
                << (c.pass ? "true" : "false") << '\n';
        }
    } else {
        out << "model " << model_name(config.model) << ", " << config.trials << " trials, seed " << config.seed << "\n";
        out << "  setting  outcome  count       expected        observed        z\n";
        for (const auto &c : report.cells) {
            char line[160];
            std::snprintf(
                line,
                sizeof(line),
                "  %-7s  %-7s  %-10llu  %-14s  %-14s  %s%s\n",
                c.setting.key().c_str(),
                c.outcome.name().c_str(),
                static_cast<unsigned long long>(c.count),
                num(c.expected).c_str(),
                num(c.observed).c_str(),
                c.z_score ? num(*c.z_score).c_str() : "-",
                c.pass ? "" : "  FAIL");
            out << line;
        }
        for (const auto &s : report.empty_settings) {
            out << "  setting " << s.key() << ": no trials (excluded)\n";
        }
        out << "chi-square " << num(report.chi_square) << " on " << report.degrees_of_freedom << " dof (threshold "
            << num(report.chi_square_threshold) << ")\n";
        out << (report.pass ? "PASS" : "FAIL") << "\n";
    }
    return report.pass ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------- interpret

json candidates_json(const std::vector<PreexistingCandidate> &cands, const SettingPair &bases) {
    json arr = json::array();
    for (const auto &c : cands) {
        arr.push_back({
            {"outcome", c.state.outcome().name()},
            {"label", display_outcome(bases, c.state.outcome())},
            {"probability", io::round12(c.probability)},
        });
    }
    return arr;
}

void print_candidates(std::ostream &out, const std::vector<PreexistingCandidate> &cands, const SettingPair &bases) {
    for (const auto &c : cands) {
        out << "  " << display_outcome(bases, c.state.outcome()) << "  " << num(c.probability) << "\n";
    }
}

int cmd_interpret(
    const std::string &state_name,
    const std::string &basis_text,
    const std::string &against,
    const std::string &format,
    std::ostream &out) {
    auto state = named_state(state_name);
    if (!state) {
        throw UsageError("Unknown state '" + state_name + "'; expected phi-plus, phi-minus or hardy.");
    }
    std::optional<TwoQubitState> other;
    if (!against.empty()) {
        other = named_state(against);
        if (!other) {
            throw UsageError("Unknown state '" + against + "'; expected phi-plus, phi-minus or hardy.");
        }
    }
    const SettingPair target = parse_basis_pair(basis_text);
    const auto changes = builtin_changes();

    std::vector<PreexistingCandidate> cands;
    std::vector<PreexistingCandidate> other_cands;
    std::optional<bool> same;
    try {
        cands = enumerate_preexisting(rebase_to(*state, target, changes));
        if (other) {
            other_cands = enumerate_preexisting(rebase_to(*other, target, changes));
            std::array<SettingPair, 1> targets{target};
            same = distinguish_states(*state, *other, targets, changes).same_candidates_per_basis.at(target);
        }
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }

    if (format == "json") {
        json j = {{"state", state_name}, {"basis", target.key()}, {"candidates", candidates_json(cands, target)}};
        if (other) {
            j["against"] = {
                {"state", against},
                {"candidates", candidates_json(other_cands, target)},
                {"verdict", *same ? "same" : "different"},
            };
        }
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "state,basis,outcome,label,probability\n";
        auto rows = [&](const std::string &name, const std::vector<PreexistingCandidate> &cs) {
            for (const auto &c : cs) {
                out << name << ',' << target.key() << ',' << c.state.outcome().name() << ','
                    << display_outcome(target, c.state.outcome()) << ',' << num(c.probability) << '\n';
            }
        };
        rows(state_name, cands);
        if (other) {
            rows(against, other_cands);
        }
    } else {
        out << state_name << " in basis (" << target.left.name() << "," << target.right.name()
            << "): pre-existing candidates\n";
        print_candidates(out, cands, target);
        if (other) {
            out << against << " in basis (" << target.left.name() << "," << target.right.name()
                << "): pre-existing candidates\n";
            print_candidates(out, other_cands, target);
            out << (*same ? "same" : "different") << "\n";
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- check-local

int cmd_check_local(const std::string &behavior_path, const std::string &format, std::ostream &out) {
    Behavior behavior = behavior_path.empty() ? hardy_behavior() : io::read_behavior_file(behavior_path);
    MembershipResult m = local_membership(behavior);
    bool feasible = m.verdict == MembershipResult::Verdict::Feasible;

    if (format == "json") {
        out << io::membership_to_json(m).dump(2) << "\n";
    } else if (format == "csv") {
        out << "kind,key,value\n";
        out << "verdict,," << (feasible ? "feasible" : "infeasible") << "\n";
        out << "residual,," << num(m.residual) << "\n";
        if (m.weights) {
            for (size_t s = 0; s < 16; s++) {
                out << "weight," << s << ',' << num((*m.weights)[s]) << '\n';
            }
        }
        if (m.witness) {
            for (size_t i = 0; i < 16; i++) {
                out << "witness," << cell_name(i) << ',' << num(m.witness->coefficients[i]) << '\n';
            }
            out << "witness_value,," << num(m.witness->value) << '\n';
            out << "deterministic_max,," << num(m.witness->deterministic_max) << '\n';
        }
    } else {
        out << "verdict: " << (feasible ? "feasible" : "infeasible") << "\n";
        out << "residual: " << num(m.residual) << "\n";
        out << "l1 distance to local polytope: " << num(m.l1_distance) << "\n";
        if (m.weights) {
            out << "weights:\n";
            for (size_t s = 0; s < 16; s++) {
                if ((*m.weights)[s] > 0) {
                    out << "  strategy " << s << ": " << num((*m.weights)[s]) << "\n";
                }
            }
        }
        if (m.witness) {
            out << "witness (" << (m.witness->source == Witness::Source::Dual ? "dual" : "hardy") << "):\n";
            for (size_t i = 0; i < 16; i++) {
                if (io::round12(m.witness->coefficients[i]) != 0) {
                    out << "  " << cell_name(i) << ": " << num(m.witness->coefficients[i]) << "\n";
                }
            }
            out << "witness value " << num(m.witness->value) << ", deterministic max "
                << num(m.witness->deterministic_max) << ", margin " << num(m.witness->margin()) << "\n";
        }
        out << "hardy witness: " << num(hardy_witness(behavior)) << "\n";
    }
    return feasible ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------- mixture-compare

int cmd_mixture_compare(const std::string &format, std::ostream &out) {
    const std::vector<SettingPair> settings{{"z", "z"}, {"x", "x"}};
    const auto changes = builtin_changes();
    Behavior entangled;
    for (const auto &s : settings) {
        entangled.set_row(s, born_table(rebase_to(phi_plus_state(), s, changes)));
    }
    Mixture furry({
        {0.5, ProductState{"z", "z", Outcome::R, Outcome::R}},
        {0.5, ProductState{"z", "z", Outcome::G, Outcome::G}},
    });
    Behavior mixed = mixture_behavior(furry, settings, changes);

    struct Diff {
        SettingPair setting;
        JointOutcome outcome;
        double entangled;
        double mixture;
    };
    std::vector<Diff> diffs;
    for (const auto &s : settings) {
        for (const auto &o : kJointOutcomes) {
            double pe = entangled.at(s, o);
            double pm = mixed.at(s, o);
            if (std::abs(pe - pm) > kInternalTolerance) {
                diffs.push_back({s, o, pe, pm});
            }
        }
    }

    if (format == "json") {
        json d = json::array();
        for (const auto &x : diffs) {
            d.push_back({
                {"setting", x.setting.key()},
                {"outcome", x.outcome.name()},
                {"label", display_outcome(x.setting, x.outcome)},
                {"entangled", io::round12(x.entangled)},
                {"mixture", io::round12(x.mixture)},
                {"difference", io::round12(x.entangled - x.mixture)},
            });
        }
        out << json{
                   {"entangled", io::behavior_to_json(entangled)},
                   {"mixture", io::behavior_to_json(mixed)},
                   {"differences", d},
               }
                   .dump(2)
            << "\n";
    } else if (format == "csv") {
        out << "setting,outcome,label,entangled,mixture,differs\n";
        for (const auto &s : settings) {
            for (const auto &o : kJointOutcomes) {
                double pe = entangled.at(s, o);
                double pm = mixed.at(s, o);
                out << s.key() << ',' << o.name() << ',' << display_outcome(s, o) << ',' << num(pe) << ','
                    << num(pm) << ',' << (std::abs(pe - pm) > kInternalTolerance ? "true" : "false") << '\n';
            }
        }
    } else {
        out << "entangled (|++> + |-->)/sqrt2 vs 50/50 mixture of |++> and |--> (z basis)\n";
        out << "  setting  outcome  entangled       mixture\n";
        for (const auto &s : settings) {
            for (const auto &o : kJointOutcomes) {
                double pe = entangled.at(s, o);
                double pm = mixed.at(s, o);
                char line[128];
                std::snprintf(
                    line,
                    sizeof(line),
                    "  %-7s  %-7s  %-14s  %-14s%s\n",
                    s.key().c_str(),
                    display_outcome(s, o).c_str(),
                    num(pe).c_str(),
                    num(pm).c_str(),
                    std::abs(pe - pm) > kInternalTolerance ? "  <- differs" : "");
                out << line;
            }
        }
        out << diffs.size() << " differing cells\n";
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Realist model of the Hardy experiment: tables, simulation, interpretation and locality checks."};
    app.name("hardy");
    app.require_subcommand(1);
    const std::vector<std::string> formats{"text", "json", "csv"};

    std::string format = "text";
    auto *tables = app.add_subcommand("tables", "Coefficient and probability tables of the Hardy state.");
    tables->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

    SimulateOptions sim;
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo run compared against the quantum predictions.");
    simulate->add_option("--trials", sim.trials, "Number of runs")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    simulate->add_option("--model", sim.model, "quantum or realist")
        ->check(CLI::IsMember({"quantum", "realist"}))
        ->capture_default_str();
    simulate->add_option("--format", sim.format, "Output format")->check(CLI::IsMember(formats));
    simulate->add_option("--log", sim.log_path, "Write the per-trial CSV log here");
    simulate->add_option("--workers", sim.workers, "Threads (does not change results)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--shard-size", sim.shard_size, "Trials per shard")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--p-left", sim.left_mode1, "Probability the left detector is in mode 1")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    simulate->add_option("--p-right", sim.right_mode1, "Probability the right detector is in mode 1")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    std::string state_name;
    std::string basis;
    std::string against;
    auto *interpret = app.add_subcommand("interpret", "Pre-existing candidate states of a named state.");
    interpret->add_option("--state", state_name, "phi-plus, phi-minus or hardy")->required();
    interpret->add_option("--basis", basis, "Basis pair such as zz, xx, 11, 22")->required();
    interpret->add_option("--against", against, "Second state to compare candidates with");
    interpret->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

    std::string behavior_path;
    auto *check = app.add_subcommand("check-local", "Local polytope membership of a behavior.");
    check->add_option("--behavior", behavior_path, "Behavior JSON file (default: Hardy quantum behavior)");
    check->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

    auto *mixture = app.add_subcommand("mixture-compare", "Entangled state vs. product-state mixture predictions.");
    mixture->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

    std::vector<const char *> argv{"hardy"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (tables->parsed()) {
            return cmd_tables(format, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim, out, err);
        }
        if (interpret->parsed()) {
            return cmd_interpret(state_name, basis, against, format, out);
        }
        if (check->parsed()) {
            return cmd_check_local(behavior_path, format, out);
        }
        if (mixture->parsed()) {
            return cmd_mixture_compare(format, out);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace hardy::cli
