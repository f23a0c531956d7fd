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

#include "hardy/io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hardy::io {

using nlohmann::json;

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    // Residue from cancelled amplitudes prints as zero.
    if (std::abs(x) < kInternalTolerance) {
        return 0.0;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    double r = std::strtod(buf, nullptr);
    return r;
}

json behavior_to_json(const Behavior &b) {
    json out = json::object();
    for (const auto &[setting, row] : b.rows()) {
        json r = json::object();
        for (const auto &o : kJointOutcomes) {
            r[o.name()] = round12(row[o.index()]);
        }
        out[setting.key()] = r;
    }
    return out;
}

Behavior behavior_from_json(const json &j) {
    if (!j.is_object()) {
        throw SchemaError("Behavior must be a JSON object keyed by setting.");
    }
    for (const auto &[key, value] : j.items()) {
        bool known = false;
        for (const auto &s : hardy_settings()) {
            known = known || s.key() == key;
        }
        if (!known) {
            throw SchemaError("Unexpected setting key '" + key + "'; expected 11, 12, 21, 22.");
        }
    }
    Behavior b;
    for (const auto &s : hardy_settings()) {
        if (!j.contains(s.key())) {
            throw SchemaError("Missing setting '" + s.key() + "'.");
        }
        const json &row = j.at(s.key());
        if (!row.is_object()) {
            throw SchemaError("Setting '" + s.key() + "' must map outcomes to probabilities.");
        }
        for (const auto &[key, value] : row.items()) {
            try {
                JointOutcome::parse(key);
            } catch (const std::invalid_argument &) {
                throw SchemaError("Unexpected outcome key '" + s.key() + ":" + key + "'.");
            }
        }
        JointTable p{};
        for (const auto &o : kJointOutcomes) {
            std::string cell = s.key() + ":" + o.name();
            if (!row.contains(o.name())) {
                throw SchemaError("Missing cell " + cell + ".");
            }
            const json &v = row.at(o.name());
            if (!v.is_number()) {
                throw SchemaError("Cell " + cell + " is not a number.");
            }
            p[o.index()] = v.get<double>();
        }
        b.set_row(s, p);
    }
    try {
        b.validate(kInputNormTolerance);
    } catch (const std::invalid_argument &e) {
        throw SchemaError(e.what());
    }
    return b;
}

Behavior read_behavior_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("Cannot open behavior file '" + path + "'.");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw SchemaError("Behavior file '" + path + "' is not valid JSON: " + e.what());
    }
    return behavior_from_json(j);
}

json context_assignment_to_json(const ContextAssignment &a) {
    json out = json::object();
    for (size_t k = 0; k < 4; k++) {
        out[hardy_settings()[k].key()] = a[k].name();
    }
    return out;
}

ContextAssignment context_assignment_from_json(const json &j) {
    if (!j.is_object() || j.size() != 4) {
        throw SchemaError("Context assignment must map exactly the four settings 11, 12, 21, 22.");
    }
    std::array<JointOutcome, 4> per{};
    for (size_t k = 0; k < 4; k++) {
        const std::string key = hardy_settings()[k].key();
        if (!j.contains(key) || !j.at(key).is_string()) {
            throw SchemaError("Context assignment lacks an outcome string for setting " + key + ".");
        }
        try {
            per[k] = JointOutcome::parse(j.at(key).get<std::string>());
        } catch (const std::invalid_argument &e) {
            throw SchemaError("Setting " + key + ": " + e.what());
        }
    }
    return ContextAssignment(per);
}

json frequency_table_to_json(const FrequencyTable &t) {
    json out = json::object();
    for (const auto &[setting, counts] : t.counts()) {
        json r = json::object();
        for (const auto &o : kJointOutcomes) {
            r[o.name()] = counts[o.index()];
        }
        out[setting.key()] = r;
    }
    return out;
}

json comparison_report_to_json(const ComparisonReport &r) {
    json cells = json::array();
    for (const auto &c : r.cells) {
        cells.push_back({
            {"setting", c.setting.key()},
            {"outcome", c.outcome.name()},
            {"expected", round12(c.expected)},
            {"observed", round12(c.observed)},
            {"count", c.count},
            {"setting_total", c.setting_total},
            {"z", c.z_score ? json(round12(*c.z_score)) : json(nullptr)},
            {"pass", c.pass},
        });
    }
    json empty = json::array();
    for (const auto &s : r.empty_settings) {
        empty.push_back(s.key());
    }
    return {
        {"pass", r.pass},
        {"chi_square", round12(r.chi_square)},
        {"degrees_of_freedom", r.degrees_of_freedom},
        {"chi_square_threshold", round12(r.chi_square_threshold)},
        {"max_abs_z", kMaxAbsZScore},
        {"empty_settings", empty},
        {"cells", cells},
    };
}

json membership_to_json(const MembershipResult &m) {
    json out = {
        {"verdict", m.verdict == MembershipResult::Verdict::Feasible ? "feasible" : "infeasible"},
        {"residual", round12(m.residual)},
        {"l1_distance", round12(m.l1_distance)},
    };
    if (m.weights) {
        json w = json::array();
        for (double x : *m.weights) {
            w.push_back(round12(x));
        }
        out["weights"] = w;
    } else {
        out["weights"] = nullptr;
    }
    if (m.witness) {
        json coeffs = json::object();
        for (size_t i = 0; i < m.witness->coefficients.size(); i++) {
            coeffs[cell_name(i)] = round12(m.witness->coefficients[i]);
        }
        out["witness"] = {
            {"source", m.witness->source == Witness::Source::Dual ? "dual" : "hardy"},
            {"coefficients", coeffs},
            {"value", round12(m.witness->value)},
            {"deterministic_max", round12(m.witness->deterministic_max)},
            {"margin", round12(m.witness->margin())},
        };
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

void write_trial_log_csv(std::ostream &out, std::span<const TrialRecord> log) {
    out << "trial,setting_l,setting_r,outcome_l,outcome_r\n";
    for (const auto &t : log) {
        const SettingPair &s = t.setting();
        out << t.index << ',' << s.left.name() << ',' << s.right.name() << ',' << outcome_char(t.outcome.left) << ','
            << outcome_char(t.outcome.right) << '\n';
    }
}

}  // namespace hardy::io
