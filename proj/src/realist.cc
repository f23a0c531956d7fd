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

#include "hardy/realist.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hardy {

std::vector<PreexistingCandidate> enumerate_preexisting(const TwoQubitState &state) {
    std::vector<PreexistingCandidate> out;
    JointTable p = born_table(state);
    for (const auto &o : kJointOutcomes) {
        if (p[o.index()] > kCandidateThreshold) {
            out.push_back({ProductState{state.left_basis(), state.right_basis(), o.left, o.right}, p[o.index()]});
        }
    }
    return out;
}

bool DistinctionReport::all_same() const {
    return std::all_of(same_candidates_per_basis.begin(), same_candidates_per_basis.end(), [](const auto &kv) {
        return kv.second;
    });
}

namespace {

bool same_candidates(const std::vector<PreexistingCandidate> &a, const std::vector<PreexistingCandidate> &b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (size_t k = 0; k < a.size(); k++) {
        if (a[k].state.outcome() != b[k].state.outcome() ||
            std::abs(a[k].probability - b[k].probability) > kCandidateMatchTolerance) {
            return false;
        }
    }
    return true;
}

}  // namespace

DistinctionReport distinguish_states(
    const TwoQubitState &s1,
    const TwoQubitState &s2,
    std::span<const SettingPair> targets,
    std::span<const BasisChange> changes) {
    DistinctionReport report;
    for (const auto &t : targets) {
        auto c1 = enumerate_preexisting(rebase_to(s1, t, changes));
        auto c2 = enumerate_preexisting(rebase_to(s2, t, changes));
        report.same_candidates_per_basis[t] = same_candidates(c1, c2);
    }
    return report;
}

const JointOutcome &ContextAssignment::at(const SettingPair &setting) const {
    auto k = hardy_setting_index(setting);
    if (!k) {
        throw std::invalid_argument("Setting " + setting.key() + " is not one of the four Hardy settings.");
    }
    return per_setting_[*k];
}

bool ContextAssignment::is_supported_by(const Behavior &behavior) const {
    const auto &settings = hardy_settings();
    for (size_t k = 0; k < 4; k++) {
        if (!(behavior.at(settings[k], per_setting_[k]) > 0)) {
            return false;
        }
    }
    return true;
}

size_t ContextAssignment::code() const {
    size_t c = 0;
    for (const auto &o : per_setting_) {
        c = c * 4 + o.index();
    }
    return c;
}

ContextAssignment ContextAssignment::from_code(size_t code) {
    if (code >= 256) {
        throw std::invalid_argument("Context assignment code must be below 256.");
    }
    std::array<JointOutcome, 4> per{};
    for (size_t k = 4; k-- > 0;) {
        per[k] = JointOutcome::from_index(code % 4);
        code /= 4;
    }
    return ContextAssignment(per);
}

ContextAssignment example_assignment() {
    return ContextAssignment({
        JointOutcome{Outcome::R, Outcome::G},
        JointOutcome{Outcome::G, Outcome::R},
        JointOutcome{Outcome::R, Outcome::R},
        JointOutcome{Outcome::R, Outcome::R},
    });
}

ContextSampler::ContextSampler(const Behavior &behavior) {
    const auto &settings = hardy_settings();
    for (size_t k = 0; k < 4; k++) {
        if (!behavior.contains(settings[k])) {
            throw std::invalid_argument("Behavior lacks Hardy setting " + settings[k].key() + ".");
        }
    }
    behavior.validate(kInputNormTolerance);
    for (size_t k = 0; k < 4; k++) {
        const JointTable &row = behavior.row(settings[k]);
        double acc = 0;
        last_nonzero_[k] = 0;
        for (size_t j = 0; j < 4; j++) {
            double p = std::max(row[j], 0.0);
            acc += p;
            cumulative_[k][j] = acc;
            if (p > 0) {
                last_nonzero_[k] = j;
            }
        }
    }
}

JointOutcome ContextSampler::draw(size_t setting_index, SplitMix64 &rng) const {
    const JointTable &cum = cumulative_[setting_index];
    // Scale by the row total so rows summing to 1 +- 1e-9 are still exact distributions.
    double u = rng.uniform01() * cum[3];
    for (size_t j = 0; j < 4; j++) {
        if (u < cum[j]) {
            return JointOutcome::from_index(j);
        }
    }
    return JointOutcome::from_index(last_nonzero_[setting_index]);
}

ContextAssignment ContextSampler::sample(SplitMix64 &rng) const {
    std::array<JointOutcome, 4> per{};
    for (size_t k = 0; k < 4; k++) {
        per[k] = draw(k, rng);
    }
    return ContextAssignment(per);
}

ContextAssignment sample_context(const Behavior &behavior, SplitMix64 &rng) {
    return ContextSampler(behavior).sample(rng);
}

JointOutcome reveal(const ContextAssignment &assignment, const SettingPair &chosen) {
    return assignment.at(chosen);
}

bool is_noncontextual(const ContextAssignment &a) {
    // Order 11, 12, 21, 22: the left outcome may depend only on the left
    // setting, the right outcome only on the right setting.
    return a[0].left == a[1].left && a[2].left == a[3].left && a[0].right == a[2].right &&
           a[1].right == a[3].right;
}

}  // namespace hardy
