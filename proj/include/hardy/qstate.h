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

#ifndef HARDY_QSTATE_H
#define HARDY_QSTATE_H

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hardy {

/// Tolerance accepted on the norm of user-supplied amplitude vectors.
inline constexpr double kInputNormTolerance = 1e-9;
/// Tolerance for internal equalities (normalization, orthogonality, no-signaling).
inline constexpr double kInternalTolerance = 1e-12;

/// Name of a single-particle measurement basis ("1", "2", "z", "x", ...).
class BasisLabel {
   public:
    explicit BasisLabel(std::string name);
    BasisLabel(const char *name) : BasisLabel(std::string(name)) {}

    const std::string &name() const { return name_; }

    friend bool operator==(const BasisLabel &, const BasisLabel &) = default;
    friend auto operator<=>(const BasisLabel &, const BasisLabel &) = default;

   private:
    std::string name_;
};

/// Detector flash. For spin bases R stands for '+' and G for '-'.
enum class Outcome : uint8_t { R = 0, G = 1 };

char outcome_char(Outcome o);

struct JointOutcome {
    Outcome left;
    Outcome right;

    /// Position in the canonical order RR, RG, GR, GG.
    constexpr size_t index() const {
        return static_cast<size_t>(left) * 2 + static_cast<size_t>(right);
    }
    static constexpr JointOutcome from_index(size_t k) {
        return {static_cast<Outcome>((k >> 1) & 1), static_cast<Outcome>(k & 1)};
    }
    /// "RR", "RG", "GR" or "GG".
    std::string name() const;
    /// Inverse of name(); throws std::invalid_argument on anything else.
    static JointOutcome parse(std::string_view text);

    friend constexpr bool operator==(const JointOutcome &, const JointOutcome &) = default;
};

inline constexpr std::array<JointOutcome, 4> kJointOutcomes{
    JointOutcome{Outcome::R, Outcome::R},
    JointOutcome{Outcome::R, Outcome::G},
    JointOutcome{Outcome::G, Outcome::R},
    JointOutcome{Outcome::G, Outcome::G},
};

/// Probabilities (or amplitudes) indexed by JointOutcome::index().
using JointTable = std::array<double, 4>;

struct SettingPair {
    BasisLabel left;
    BasisLabel right;

    /// Concatenated labels, e.g. "12" or "xx".
    std::string key() const { return left.name() + right.name(); }

    friend bool operator==(const SettingPair &, const SettingPair &) = default;
    friend auto operator<=>(const SettingPair &, const SettingPair &) = default;
};

/// The four detector settings of the Hardy experiment in order 11, 12, 21, 22.
const std::array<SettingPair, 4> &hardy_settings();
/// Position of `s` in hardy_settings(), or nullopt for any other pair.
std::optional<size_t> hardy_setting_index(const SettingPair &s);

/// Thrown when a basis change is applied to a side whose label does not match.
class BasisMismatch : public std::invalid_argument {
   public:
    enum class Side { Left, Right };
    BasisMismatch(Side side, const BasisLabel &expected, const BasisLabel &actual);
    Side side() const { return side_; }

   private:
    Side side_;
};

/// Real two-qubit state with amplitudes indexed by JointOutcome in the basis
/// pair (left_basis, right_basis). Always unit norm.
class TwoQubitState {
   public:
    TwoQubitState(BasisLabel left_basis, BasisLabel right_basis, const JointTable &amps);

    const BasisLabel &left_basis() const { return left_; }
    const BasisLabel &right_basis() const { return right_; }
    const JointTable &amps() const { return amps_; }
    double amp(JointOutcome o) const { return amps_[o.index()]; }
    SettingPair bases() const { return {left_, right_}; }

   private:
    BasisLabel left_;
    BasisLabel right_;
    JointTable amps_;
};

/// Validates and renormalizes. Throws std::invalid_argument if the norm is
/// off by more than kInputNormTolerance or any amplitude is not finite.
TwoQubitState make_state(BasisLabel left_basis, BasisLabel right_basis, const JointTable &amps);

/// Orthogonal change of single-particle basis. Column c of `matrix` holds the
/// coordinates of `from` basis vector c in the `to` basis, i.e.
/// matrix[row][col] = <to,row|from,col> with rows/cols ordered (R, G).
class BasisChange {
   public:
    using Matrix = std::array<std::array<double, 2>, 2>;

    /// Throws std::invalid_argument if matrix^T matrix differs from identity
    /// by more than kInternalTolerance.
    BasisChange(BasisLabel from, BasisLabel to, const Matrix &matrix);

    const BasisLabel &from() const { return from_; }
    const BasisLabel &to() const { return to_; }
    const Matrix &matrix() const { return matrix_; }

    /// The change back from `to` to `from` (the transpose).
    BasisChange inverse() const;
    /// Applies the change to a pair of single-particle amplitudes (R, G).
    std::array<double, 2> apply(const std::array<double, 2> &coords) const;

   private:
    BasisLabel from_;
    BasisLabel to_;
    Matrix matrix_;
};

/// Observable 1 -> observable 2 change of the Hardy setup:
/// |1,R> = sqrt(0.6)|2,R> + sqrt(0.4)|2,G>, |1,G> = -sqrt(0.4)|2,R> + sqrt(0.6)|2,G>.
BasisChange hardy_basis_change();
/// z -> x change with |+-x> = (|+z> +- |-z>)/sqrt(2).
BasisChange z_to_x_change();

/// Re-expresses `state` in new per-side bases. A missing change leaves that
/// side untouched. Throws BasisMismatch if a change's `from` label differs
/// from the state's label on that side.
TwoQubitState rebasis(
    const TwoQubitState &state,
    const std::optional<BasisChange> &left,
    const std::optional<BasisChange> &right);

/// Looks up a change taking `from` to `to` among `changes`, also considering
/// their inverses. Identity when the labels are equal.
std::optional<BasisChange> find_change(
    const BasisLabel &from, const BasisLabel &to, std::span<const BasisChange> changes);

/// Rebases `state` to `target` using whatever `changes` connect the labels.
/// Throws std::invalid_argument if some side cannot be reached.
TwoQubitState rebase_to(
    const TwoQubitState &state, const SettingPair &target, std::span<const BasisChange> changes);

/// Born rule: squared amplitudes.
JointTable born_table(const TwoQubitState &state);

struct ProductState {
    BasisLabel left_basis;
    BasisLabel right_basis;
    Outcome left_outcome;
    Outcome right_outcome;

    JointOutcome outcome() const { return {left_outcome, right_outcome}; }
    TwoQubitState to_state() const;
};

struct MixtureComponent {
    double weight;
    ProductState state;
};

/// Classical ensemble of product states.
class Mixture {
   public:
    /// Throws std::invalid_argument on negative weights, weights not summing
    /// to 1 within kInternalTolerance, or an empty component list.
    explicit Mixture(std::vector<MixtureComponent> components);
    const std::vector<MixtureComponent> &components() const { return components_; }

   private:
    std::vector<MixtureComponent> components_;
};

/// Conditional outcome distributions P(outcome | setting).
class Behavior {
   public:
    Behavior() = default;

    /// Inserts or replaces a row. No validation; see validate().
    void set_row(const SettingPair &setting, const JointTable &row);
    bool contains(const SettingPair &setting) const;
    /// Throws std::out_of_range for an unknown setting.
    const JointTable &row(const SettingPair &setting) const;
    double at(const SettingPair &setting, JointOutcome o) const { return row(setting)[o.index()]; }
    const std::map<SettingPair, JointTable> &rows() const { return rows_; }
    size_t size() const { return rows_.size(); }

    /// Throws std::invalid_argument naming the first offending cell when a
    /// probability lies outside [-tol, 1 + tol], is not finite, or a row does
    /// not sum to 1 within tol.
    void validate(double tol = kInputNormTolerance) const;

    /// Largest deviation between a side's marginal under two settings of the
    /// other side that share this side's setting. Zero for a single row.
    double no_signaling_residual() const;

   private:
    std::map<SettingPair, JointTable> rows_;
};

/// Quantum predictions for the four Hardy settings, given a state in basis
/// pair (1, 1) and the 1 -> 2 change. Row order of hardy_settings().
Behavior quantum_behavior(const TwoQubitState &state_in_11, const BasisChange &change);

/// Weighted Born probabilities of a mixture at each requested setting.
/// Throws std::invalid_argument when a component cannot be rebased.
Behavior mixture_behavior(
    const Mixture &mixture, std::span<const SettingPair> settings, std::span<const BasisChange> changes);

/// Named states used throughout: (|++> + |-->)/sqrt2 and (|++> - |-->)/sqrt2
/// in (z, z), and the Hardy state in (1, 1).
TwoQubitState phi_plus_state();
TwoQubitState phi_minus_state();
TwoQubitState hardy_state();

/// quantum_behavior(hardy_state(), hardy_basis_change()).
const Behavior &hardy_behavior();

}  // namespace hardy

#endif
