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

#include "hardy/experiment.h"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hardy/realist.h"
#include "hardy/rng.h"

namespace hardy {

std::string model_name(Model m) {
    return m == Model::Quantum ? "quantum" : "realist";
}

Model parse_model(std::string_view name) {
    if (name == "quantum") {
        return Model::Quantum;
    }
    if (name == "realist") {
        return Model::Realist;
    }
    throw std::invalid_argument("Unknown model '" + std::string(name) + "'; expected quantum or realist.");
}

void ExperimentConfig::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1.");
    }
    auto is_probability = [](double p) {
        return p >= 0 && p <= 1;
    };
    if (!is_probability(left_mode1_probability) || !is_probability(right_mode1_probability)) {
        throw std::invalid_argument("Setting probabilities must lie in [0, 1].");
    }
    if (workers < 1) {
        throw std::invalid_argument("workers must be at least 1.");
    }
    if (shard_size < 1) {
        throw std::invalid_argument("shard_size must be at least 1.");
    }
}

void FrequencyTable::add_setting(const SettingPair &setting) {
    counts_.try_emplace(setting, Counts{});
}

void FrequencyTable::add(const SettingPair &setting, JointOutcome outcome, uint64_t n) {
    counts_[setting][outcome.index()] += n;
}

void FrequencyTable::merge(const FrequencyTable &other) {
    for (const auto &[setting, c] : other.counts_) {
        Counts &mine = counts_[setting];
        for (size_t k = 0; k < 4; k++) {
            mine[k] += c[k];
        }
    }
}

uint64_t FrequencyTable::count(const SettingPair &setting, JointOutcome outcome) const {
    auto it = counts_.find(setting);
    return it == counts_.end() ? 0 : it->second[outcome.index()];
}

uint64_t FrequencyTable::total(const SettingPair &setting) const {
    auto it = counts_.find(setting);
    if (it == counts_.end()) {
        return 0;
    }
    uint64_t t = 0;
    for (uint64_t c : it->second) {
        t += c;
    }
    return t;
}

uint64_t FrequencyTable::total() const {
    uint64_t t = 0;
    for (const auto &kv : counts_) {
        t += total(kv.first);
    }
    return t;
}

namespace {

struct ShardResult {
    std::array<FrequencyTable::Counts, 4> counts{};
    std::vector<TrialRecord> log;
};

ShardResult run_shard(
    const ExperimentConfig &config, const ContextSampler &sampler, uint64_t shard, uint64_t begin, uint64_t end) {
    ShardResult out;
    if (config.record_log) {
        out.log.reserve(end - begin);
    }
    SplitMix64 rng(derive_seed(config.seed, shard));
    for (uint64_t t = begin; t < end; t++) {
        size_t left = rng.uniform01() < config.left_mode1_probability ? 0 : 1;
        size_t right = rng.uniform01() < config.right_mode1_probability ? 0 : 1;
        size_t setting = left * 2 + right;
        JointOutcome outcome;
        if (config.model == Model::Quantum) {
            outcome = sampler.draw(setting, rng);
        } else {
            // A fresh pair per run: all four pre-existing states, then the
            // chosen one is revealed.
            ContextAssignment assignment = sampler.sample(rng);
            outcome = reveal(assignment, hardy_settings()[setting]);
        }
        out.counts[setting][outcome.index()]++;
        if (config.record_log) {
            out.log.push_back({t, setting, outcome});
        }
    }
    return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig &config, const Behavior &behavior) {
    config.validate();
    const ContextSampler sampler(behavior);

    const uint64_t num_shards = (config.trials + config.shard_size - 1) / config.shard_size;
    std::vector<ShardResult> shards(num_shards);
    std::atomic<uint64_t> next{0};
    auto work = [&]() {
        for (uint64_t s = next.fetch_add(1); s < num_shards; s = next.fetch_add(1)) {
            uint64_t begin = s * config.shard_size;
            uint64_t end = std::min(config.trials, begin + config.shard_size);
            shards[s] = run_shard(config, sampler, s, begin, end);
        }
    };
    size_t threads = static_cast<size_t>(std::min<uint64_t>(config.workers, num_shards));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (size_t k = 0; k < threads; k++) {
            pool.emplace_back(work);
        }
    }

    ExperimentResult result;
    const auto &settings = hardy_settings();
    for (const auto &s : settings) {
        result.table.add_setting(s);
    }
    if (config.record_log) {
        result.log.emplace();
        result.log->reserve(config.trials);
    }
    for (auto &shard : shards) {
        for (size_t k = 0; k < 4; k++) {
            for (const auto &o : kJointOutcomes) {
                result.table.add(settings[k], o, shard.counts[k][o.index()]);
            }
        }
        if (config.record_log) {
            result.log->insert(result.log->end(), shard.log.begin(), shard.log.end());
        }
    }
    return result;
}

double chi_square_critical_value(int dof) {
    if (dof <= 0) {
        return 0;
    }
    boost::math::chi_squared dist(dof);
    return boost::math::quantile(boost::math::complement(dist, kChiSquareTailProbability));
}

ComparisonReport compare_tables(const FrequencyTable &freq, const Behavior &behavior) {
    ComparisonReport report;
    bool cells_pass = true;
    for (const auto &[setting, counts] : freq.counts()) {
        if (!behavior.contains(setting)) {
            throw std::invalid_argument("Behavior has no row for observed setting " + setting.key() + ".");
        }
    }
    for (const auto &[setting, row] : behavior.rows()) {
        auto it = freq.counts().find(setting);
        uint64_t n = it == freq.counts().end() ? 0 : freq.total(setting);
        if (n == 0) {
            report.empty_settings.push_back(setting);
            continue;
        }
        int support = 0;
        for (const auto &o : kJointOutcomes) {
            double p = row[o.index()];
            uint64_t c = it->second[o.index()];
            CellComparison cell{setting, o, p, static_cast<double>(c) / static_cast<double>(n), c, n, std::nullopt, true};
            if (p <= kZeroProbability) {
                cell.pass = c == 0;
            } else if (p >= 1 - kZeroProbability) {
                cell.pass = c == n;
                support++;
            } else {
                double z = (cell.observed - p) * std::sqrt(static_cast<double>(n)) / std::sqrt(p * (1 - p));
                cell.z_score = z;
                cell.pass = std::abs(z) <= kMaxAbsZScore;
                double expected_count = p * static_cast<double>(n);
                double diff = static_cast<double>(c) - expected_count;
                report.chi_square += diff * diff / expected_count;
                support++;
            }
            cells_pass = cells_pass && cell.pass;
            report.cells.push_back(cell);
        }
        report.degrees_of_freedom += std::max(support - 1, 0);
    }
    report.chi_square_threshold = chi_square_critical_value(report.degrees_of_freedom);
    bool chi_pass = report.degrees_of_freedom == 0 || report.chi_square < report.chi_square_threshold;
    report.pass = cells_pass && chi_pass;
    return report;
}

}  // namespace hardy
