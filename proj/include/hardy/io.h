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

// JSON and CSV encodings of the library's result types. Schemas are
// documented in docs/formats.md.

#ifndef HARDY_IO_H
#define HARDY_IO_H

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

#include "hardy/experiment.h"
#include "hardy/locality.h"
#include "hardy/qstate.h"
#include "hardy/realist.h"
#include "json.hpp"

namespace hardy::io {

/// Thrown when input does not match a documented schema. The message names
/// the offending cell or key.
class SchemaError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits, the precision of every probability we emit.
double round12(double x);

/// {"11": {"RR": p, "RG": p, "GR": p, "GG": p}, "12": {...}, ...}
nlohmann::json behavior_to_json(const Behavior &b);
/// Parses the four-setting Hardy schema and validates every row.
Behavior behavior_from_json(const nlohmann::json &j);
/// Reads and parses a behavior file. I/O failures throw std::runtime_error.
Behavior read_behavior_file(const std::string &path);

/// {"11": "RG", "12": "GR", "21": "RR", "22": "RR"}
nlohmann::json context_assignment_to_json(const ContextAssignment &a);
ContextAssignment context_assignment_from_json(const nlohmann::json &j);

/// {"11": {"RR": n, ...}, ...}
nlohmann::json frequency_table_to_json(const FrequencyTable &t);
nlohmann::json comparison_report_to_json(const ComparisonReport &r);
nlohmann::json membership_to_json(const MembershipResult &m);

/// Header `trial,setting_l,setting_r,outcome_l,outcome_r`, one row per trial.
void write_trial_log_csv(std::ostream &out, std::span<const TrialRecord> log);

}  // namespace hardy::io

#endif
