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

#ifndef HARDY_LOCALITY_H
#define HARDY_LOCALITY_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardy/qstate.h"
#include "hardy/realist.h"

namespace hardy {

/// Behavior cells of the 2-setting/2-outcome scenario, flattened as
/// setting_index * 4 + outcome_index (11:RR, 11:RG, ..., 22:GG).
using CellVector = std::array<double, 16>;

/// "11:RR" style name of flattened cell `i`.
std::string cell_name(size_t i);
/// Flattens the four Hardy rows. Throws std::invalid_argument naming the
/// first missing setting.
CellVector behavior_cells(const Behavior &b);

/// Local deterministic response: each side's outcome depends only on its own
/// setting. Bits (left@1, left@2, right@1, right@2), G = 1, left bits major,
/// so index 0 is all-R and index 15 is all-G.
class DeterministicStrategy {
   public:
    explicit constexpr DeterministicStrategy(uint8_t index) : bits_(index & 0xF) {}
    static constexpr DeterministicStrategy from_maps(Outcome left1, Outcome left2, Outcome right1, Outcome right2) {
        return DeterministicStrategy(static_cast<uint8_t>(
            (static_cast<int>(left1) << 3) | (static_cast<int>(left2) << 2) | (static_cast<int>(right1) << 1) |
            static_cast<int>(right2)));
    }

    constexpr uint8_t index() const { return bits_; }
    /// mode is 1 or 2.
    constexpr Outcome left(int mode) const { return static_cast<Outcome>((bits_ >> (mode == 1 ? 3 : 2)) & 1); }
    constexpr Outcome right(int mode) const { return static_cast<Outcome>((bits_ >> (mode == 1 ? 1 : 0)) & 1); }
    constexpr JointOutcome respond(int left_mode, int right_mode) const {
        return {left(left_mode), right(right_mode)};
    }

    /// The context assignment this strategy produces.
    ContextAssignment assignment() const;

    friend constexpr bool operator==(DeterministicStrategy, DeterministicStrategy) = default;

   private:
    uint8_t bits_;
};

/// All 16 strategies in index order.
const std::array<DeterministicStrategy, 16> &deterministic_strategies();

/// 0/1 behavior with all mass on the strategy's response at each setting.
Behavior strategy_behavior(DeterministicStrategy s);

/// P(GG|22) - P(GG|12) - P(GG|21) - P(RR|11). Nonpositive on local behaviors.
double hardy_witness(const Behavior &b);
/// Coefficients of hardy_witness over the flattened cells.
CellVector hardy_witness_coefficients();

inline constexpr double kFeasibilityResidual = 1e-9;
inline constexpr double kWitnessMargin = 1e-9;

/// Linear functional over behavior cells separating a behavior from the
/// local polytope.
struct Witness {
    enum class Source { Dual, Hardy };

    CellVector coefficients;
    /// Functional evaluated on the tested behavior.
    double value;
    /// Largest value over the 16 deterministic behaviors.
    double deterministic_max;
    Source source;

    double margin() const { return value - deterministic_max; }
};

struct MembershipResult {
    enum class Verdict { Feasible, Infeasible };

    Verdict verdict;
    /// Vertex weights, present when feasible.
    std::optional<std::array<double, 16>> weights;
    /// Max absolute cell mismatch of the best convex combination found.
    double residual;
    /// Present when infeasible.
    std::optional<Witness> witness;
    /// L1 distance from the behavior to the local polytope (LP optimum).
    double l1_distance;
};

/// Decides whether `b` is a convex combination of the 16 deterministic
/// behaviors by solving  min ||b - V w||_1  over the simplex. The LP dual
/// is a functional with coefficients in [-1, 1] whose margin over the
/// deterministic maximum equals that distance; it is returned as the witness.
/// Throws std::invalid_argument for a malformed behavior.
MembershipResult local_membership(const Behavior &b);

/// Probability that independent per-setting sampling from `b` yields a
/// noncontextual ContextAssignment.
double noncontextual_fraction(const Behavior &b);

}  // namespace hardy

#endif
