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

#ifndef HARDY_EXPERIMENT_H
#define HARDY_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/qstate.h"

namespace hardy {

enum class Model { Quantum, Realist };

std::string model_name(Model m);
/// "quantum" or "realist"; throws std::invalid_argument otherwise.
Model parse_model(std::string_view name);

inline constexpr uint64_t kDefaultShardSize = uint64_t{1} << 16;

struct ExperimentConfig {
    uint64_t trials = 1;
    uint64_t seed = 0;
    Model model = Model::Quantum;
    /// Probability that each detector is set to mode 1.
    double left_mode1_probability = 0.5;
    double right_mode1_probability = 0.5;
    /// Threads used to run shards. Does not affect results.
    size_t workers = 1;
    /// Trials per shard. Part of the reproducibility key together with the seed.
    uint64_t shard_size = kDefaultShardSize;
    bool record_log = false;

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

struct TrialRecord {
    uint64_t index;
    /// Position in hardy_settings().
    size_t setting_index;
    JointOutcome outcome;

    const SettingPair &setting() const { return hardy_settings()[setting_index]; }
};

/// Outcome counts per setting.
class FrequencyTable {
   public:
    using Counts = std::array<uint64_t, 4>;

    FrequencyTable() = default;

    /// Registers a setting with zero counts.
    void add_setting(const SettingPair &setting);
    void add(const SettingPair &setting, JointOutcome outcome, uint64_t n = 1);
    /// Adds all counts of `other`; associative and commutative.
    void merge(const FrequencyTable &other);

    const std::map<SettingPair, Counts> &counts() const { return counts_; }
    uint64_t count(const SettingPair &setting, JointOutcome outcome) const;
    uint64_t total(const SettingPair &setting) const;
    uint64_t total() const;

    friend bool operator==(const FrequencyTable &, const FrequencyTable &) = default;

   private:
    std::map<SettingPair, Counts> counts_;
};

struct ExperimentResult {
    FrequencyTable table;
    std::optional<std::vector<TrialRecord>> log;
};

/// Runs `config.trials` runs of the Hardy experiment against `behavior`,
/// which must hold rows for the four Hardy settings. Trials are split into
/// shards of config.shard_size; shard k draws from SplitMix64(derive_seed(seed, k))
/// and results are concatenated in shard order, so the output does not
/// depend on config.workers.
ExperimentResult run_experiment(const ExperimentConfig &config, const Behavior &behavior);

/// Pass thresholds of compare_tables.
inline constexpr double kMaxAbsZScore = 5.0;
/// Upper-tail probability defining the chi-square critical value.
inline constexpr double kChiSquareTailProbability = 1e-6;
/// Cells with expected probability at or below this are treated as forbidden.
inline constexpr double kZeroProbability = 1e-12;

/// Upper 1 - kChiSquareTailProbability quantile of chi-square with `dof` degrees
/// of freedom (44.8109... for dof = 9). Zero when dof is zero.
double chi_square_critical_value(int dof);

struct CellComparison {
    SettingPair setting;
    JointOutcome outcome;
    double expected;
    double observed;
    uint64_t count;
    uint64_t setting_total;
    /// Absent for cells with expected probability 0 or 1.
    std::optional<double> z_score;
    bool pass;
};

struct ComparisonReport {
    std::vector<CellComparison> cells;
    double chi_square = 0;
    int degrees_of_freedom = 0;
    double chi_square_threshold = 0;
    /// Settings with no trials; excluded from the statistics.
    std::vector<SettingPair> empty_settings;
    bool pass = false;
};

/// Per-cell z-scores and a chi-square goodness-of-fit test of `freq` against
/// `behavior`. Every setting in `freq` must exist in `behavior`.
ComparisonReport compare_tables(const FrequencyTable &freq, const Behavior &behavior);

}  // namespace hardy

#endif
