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

#ifndef HARDY_REALIST_H
#define HARDY_REALIST_H

#include <array>
#include <map>
#include <span>
#include <vector>

#include "hardy/qstate.h"
#include "hardy/rng.h"

namespace hardy {

/// Amplitudes with |amp|^2 at or below this are not candidates.
inline constexpr double kCandidateThreshold = 1e-12;
/// Candidate probabilities closer than this count as equal.
inline constexpr double kCandidateMatchTolerance = 1e-9;

struct PreexistingCandidate {
    ProductState state;
    double probability;
};

/// Basis states of `state`'s current basis pair that carry weight, in
/// canonical RR, RG, GR, GG order.
std::vector<PreexistingCandidate> enumerate_preexisting(const TwoQubitState &state);

struct DistinctionReport {
    std::map<SettingPair, bool> same_candidates_per_basis;

    bool all_same() const;
};

/// For each target basis pair, whether the two states have the same
/// pre-existing candidates (same outcomes, same probabilities).
DistinctionReport distinguish_states(
    const TwoQubitState &s1,
    const TwoQubitState &s2,
    std::span<const SettingPair> targets,
    std::span<const BasisChange> changes);

/// One run's pre-existing joint outcome for each Hardy setting, stored in
/// hardy_settings() order.
class ContextAssignment {
   public:
    explicit ContextAssignment(const std::array<JointOutcome, 4> &per_setting) : per_setting_(per_setting) {}

    const std::array<JointOutcome, 4> &per_setting() const { return per_setting_; }
    const JointOutcome &operator[](size_t setting_index) const { return per_setting_[setting_index]; }
    /// Throws std::invalid_argument for a setting outside {1,2}x{1,2}.
    const JointOutcome &at(const SettingPair &setting) const;

    /// True when every stored outcome has positive probability in `behavior`.
    bool is_supported_by(const Behavior &behavior) const;

    /// Index in [0, 256): base-4 digits are the outcome indices, setting 11 most significant.
    size_t code() const;
    static ContextAssignment from_code(size_t code);

    friend bool operator==(const ContextAssignment &, const ContextAssignment &) = default;

   private:
    std::array<JointOutcome, 4> per_setting_;
};

/// A sample run consistent with the Hardy behavior: 11 -> RG, 12 -> GR, 21 -> RR, 22 -> RR.
ContextAssignment example_assignment();

/// Precomputed per-setting inverse CDFs for repeated sampling.
class ContextSampler {
   public:
    /// Throws std::invalid_argument unless `behavior` has all four Hardy
    /// settings with valid rows (sums within kInputNormTolerance).
    explicit ContextSampler(const Behavior &behavior);

    /// One outcome for one setting, consuming one draw from `rng`.
    JointOutcome draw(size_t setting_index, SplitMix64 &rng) const;
    /// Four independent draws, settings in hardy_settings() order.
    ContextAssignment sample(SplitMix64 &rng) const;

   private:
    std::array<JointTable, 4> cumulative_;
    std::array<size_t, 4> last_nonzero_;
};

ContextAssignment sample_context(const Behavior &behavior, SplitMix64 &rng);

/// The outcome a measurement at `chosen` reveals. Throws std::invalid_argument
/// for a setting outside the four Hardy settings.
JointOutcome reveal(const ContextAssignment &assignment, const SettingPair &chosen);

/// True iff the assignment factors as (f_left(i), f_right(j)) for per-side
/// functions of the local setting only.
bool is_noncontextual(const ContextAssignment &assignment);

}  // namespace hardy

#endif
