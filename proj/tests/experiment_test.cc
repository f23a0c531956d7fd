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

#include <cmath>

#include "gtest/gtest.h"
#include "hardy/rng.h"

using namespace hardy;

namespace {

ExperimentConfig config(uint64_t trials, uint64_t seed, Model model) {
    ExperimentConfig c;
    c.trials = trials;
    c.seed = seed;
    c.model = model;
    return c;
}

const SettingPair k11{"1", "1"};
const SettingPair k22{"2", "2"};
const JointOutcome kRR{Outcome::R, Outcome::R};
const JointOutcome kGG{Outcome::G, Outcome::G};

}  // namespace

TEST(rng, splitmix64_reference_values) {
    // Reference outputs of SplitMix64 seeded with 0 (Vigna's splitmix64.c).
    SplitMix64 rng(0);
    EXPECT_EQ(rng(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng(), 0x06C45D188009454FULL);
}

TEST(rng, uniform01_range) {
    SplitMix64 rng(3);
    for (int t = 0; t < 10000; t++) {
        double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(rng, derived_seeds_differ) {
    EXPECT_NE(derive_seed(42, 0), derive_seed(42, 1));
    EXPECT_NE(derive_seed(42, 0), derive_seed(43, 0));
    EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
}

TEST(experiment, config_validation) {
    ExperimentConfig c = config(0, 1, Model::Quantum);
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.trials = 1;
    c.left_mode1_probability = 1.5;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.left_mode1_probability = 0.5;
    c.workers = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.workers = 1;
    c.shard_size = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.shard_size = 10;
    EXPECT_NO_THROW(c.validate());
    EXPECT_THROW(run_experiment(config(0, 1, Model::Quantum), hardy_behavior()), std::invalid_argument);
}

TEST(experiment, model_names) {
    EXPECT_EQ(parse_model("quantum"), Model::Quantum);
    EXPECT_EQ(parse_model("realist"), Model::Realist);
    EXPECT_EQ(model_name(Model::Realist), "realist");
    EXPECT_THROW(parse_model("orthodox"), std::invalid_argument);
}

TEST(experiment, degenerate_behavior_all_rr) {
    Behavior b;
    for (const auto &s : hardy_settings()) {
        b.set_row(s, {1, 0, 0, 0});
    }
    for (Model m : {Model::Quantum, Model::Realist}) {
        ExperimentConfig c = config(4, 9, m);
        c.record_log = true;
        ExperimentResult r = run_experiment(c, b);
        ASSERT_TRUE(r.log);
        ASSERT_EQ(r.log->size(), 4u);
        for (size_t i = 0; i < 4; i++) {
            EXPECT_EQ((*r.log)[i].index, i);
            EXPECT_EQ((*r.log)[i].outcome, kRR);
        }
        EXPECT_EQ(r.table.total(), 4u);
    }
}

TEST(experiment, quantum_hardy_million) {
    ExperimentResult r = run_experiment(config(1000000, 12345, Model::Quantum), hardy_behavior());
    uint64_t n22 = r.table.total(k22);
    ASSERT_GT(n22, 0u);
    double f = r.table.count(k22, kGG) / static_cast<double>(n22);
    EXPECT_NEAR(f, 0.09, 0.002);
    EXPECT_EQ(r.table.count(k11, kRR), 0u);
    EXPECT_EQ(r.table.count({"1", "2"}, kGG), 0u);
    EXPECT_EQ(r.table.count({"2", "1"}, kGG), 0u);
    EXPECT_EQ(r.table.total(), 1000000u);
}

TEST(experiment, setting_counts_uniform_law) {
    const uint64_t n = 400000;
    ExperimentResult r = run_experiment(config(n, 8, Model::Realist), hardy_behavior());
    double tol = 5 * std::sqrt(3.0 * n / 16);
    for (const auto &s : hardy_settings()) {
        EXPECT_NEAR(static_cast<double>(r.table.total(s)), n / 4.0, tol) << s.key();
    }
}

TEST(experiment, setting_law_is_respected) {
    ExperimentConfig c = config(1000, 1, Model::Quantum);
    c.left_mode1_probability = 1;
    c.right_mode1_probability = 0;
    ExperimentResult r = run_experiment(c, hardy_behavior());
    EXPECT_EQ(r.table.total({"1", "2"}), 1000u);
}

TEST(experiment, reproducible_and_worker_independent) {
    ExperimentConfig c = config(300000, 42, Model::Realist);
    c.record_log = true;
    ExperimentResult a = run_experiment(c, hardy_behavior());
    c.workers = 4;
    ExperimentResult b = run_experiment(c, hardy_behavior());
    EXPECT_EQ(a.table, b.table);
    ASSERT_EQ(a.log->size(), b.log->size());
    for (size_t i = 0; i < a.log->size(); i++) {
        ASSERT_EQ((*a.log)[i].setting_index, (*b.log)[i].setting_index);
        ASSERT_EQ((*a.log)[i].outcome, (*b.log)[i].outcome);
    }
    c.seed = 43;
    EXPECT_NE(run_experiment(c, hardy_behavior()).table, a.table);
}

TEST(experiment, quantum_log_outcomes_have_positive_probability) {
    ExperimentConfig c = config(50000, 3, Model::Quantum);
    c.record_log = true;
    ExperimentResult r = run_experiment(c, hardy_behavior());
    for (const auto &t : *r.log) {
        ASSERT_GT(hardy_behavior().at(t.setting(), t.outcome), 1e-12);
    }
}

TEST(experiment, frequency_table_merge) {
    FrequencyTable a;
    a.add(k11, kRR, 3);
    FrequencyTable b;
    b.add(k11, kRR, 2);
    b.add(k22, kGG, 5);
    FrequencyTable ab = a;
    ab.merge(b);
    FrequencyTable ba = b;
    ba.merge(a);
    EXPECT_EQ(ab, ba);
    EXPECT_EQ(ab.count(k11, kRR), 5u);
    EXPECT_EQ(ab.total(), 10u);
}

TEST(experiment, chi_square_critical_values) {
    // scipy.stats.chi2.isf(1e-6, dof)
    EXPECT_NEAR(chi_square_critical_value(1), 23.928126976934827, 1e-6);
    EXPECT_NEAR(chi_square_critical_value(9), 44.81093787068782, 1e-6);
    EXPECT_NEAR(chi_square_critical_value(12), 50.825252138874454, 1e-6);
    EXPECT_EQ(chi_square_critical_value(0), 0);
}

TEST(experiment, compare_exactly_proportional_table) {
    FrequencyTable t;
    const uint64_t n = 8000;
    for (const auto &s : hardy_settings()) {
        for (const auto &o : kJointOutcomes) {
            double p = hardy_behavior().at(s, o);
            t.add(s, o, static_cast<uint64_t>(std::llround(p * n)));
        }
    }
    ComparisonReport r = compare_tables(t, hardy_behavior());
    EXPECT_TRUE(r.pass);
    for (const auto &c : r.cells) {
        if (c.z_score) {
            EXPECT_NEAR(*c.z_score, 0, 1e-9);
        }
    }
    EXPECT_EQ(r.degrees_of_freedom, 9);
    EXPECT_NEAR(r.chi_square, 0, 1e-9);
}

TEST(experiment, compare_forbidden_cell_fails) {
    FrequencyTable t;
    t.add(k11, {Outcome::R, Outcome::G}, 375);
    t.add(k11, {Outcome::G, Outcome::R}, 375);
    t.add(k11, kGG, 249);
    t.add(k11, kRR, 1);
    ComparisonReport r = compare_tables(t, hardy_behavior());
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.empty_settings.size(), 3u);
}

TEST(experiment, compare_z_score_formula) {
    FrequencyTable t;
    t.add(k22, kRR, 600);
    t.add(k22, {Outcome::R, Outcome::G}, 150);
    t.add(k22, {Outcome::G, Outcome::R}, 150);
    t.add(k22, kGG, 100);
    ComparisonReport r = compare_tables(t, hardy_behavior());
    for (const auto &c : r.cells) {
        if (c.outcome == kRR) {
            ASSERT_TRUE(c.z_score);
            EXPECT_NEAR(*c.z_score, (0.6 - 0.64) * std::sqrt(1000.0) / std::sqrt(0.64 * 0.36), 1e-12);
        }
    }
}

TEST(experiment, compare_furry_mixture_frequencies_fail) {
    Behavior entangled;
    entangled.set_row({"x", "x"}, {0.5, 0, 0, 0.5});
    FrequencyTable t;
    for (const auto &o : kJointOutcomes) {
        t.add({"x", "x"}, o, 2500);
    }
    ComparisonReport r = compare_tables(t, entangled);
    EXPECT_FALSE(r.pass);
}

TEST(experiment, compare_unknown_setting_errors) {
    FrequencyTable t;
    t.add({"x", "x"}, kRR, 1);
    EXPECT_THROW(compare_tables(t, hardy_behavior()), std::invalid_argument);
}

TEST(experiment, model_equivalence_in_law) {
    for (Model m : {Model::Quantum, Model::Realist}) {
        ExperimentResult r = run_experiment(config(1000000, 2024, m), hardy_behavior());
        ComparisonReport rep = compare_tables(r.table, hardy_behavior());
        EXPECT_TRUE(rep.pass) << model_name(m) << " chi2=" << rep.chi_square;
    }
}
