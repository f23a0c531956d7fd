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

#include "hardy/qstate.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hardy {

namespace {

double squared_norm(const JointTable &amps) {
    double total = 0;
    for (double a : amps) {
        total += a * a;
    }
    return total;
}

using Matrix2 = BasisChange::Matrix;

constexpr Matrix2 kIdentity{{{1.0, 0.0}, {0.0, 1.0}}};

}  // namespace

BasisLabel::BasisLabel(std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
        throw std::invalid_argument("Basis label must be non-empty.");
    }
}

char outcome_char(Outcome o) {
    return o == Outcome::R ? 'R' : 'G';
}

std::string JointOutcome::name() const {
    return {outcome_char(left), outcome_char(right)};
}

JointOutcome JointOutcome::parse(std::string_view text) {
    for (const auto &o : kJointOutcomes) {
        if (o.name() == text) {
            return o;
        }
    }
    throw std::invalid_argument("Unknown joint outcome '" + std::string(text) + "'; expected RR, RG, GR or GG.");
}

const std::array<SettingPair, 4> &hardy_settings() {
    static const std::array<SettingPair, 4> settings{
        SettingPair{"1", "1"},
        SettingPair{"1", "2"},
        SettingPair{"2", "1"},
        SettingPair{"2", "2"},
    };
    return settings;
}

std::optional<size_t> hardy_setting_index(const SettingPair &s) {
    const auto &all = hardy_settings();
    for (size_t k = 0; k < all.size(); k++) {
        if (all[k] == s) {
            return k;
        }
    }
    return std::nullopt;
}

BasisMismatch::BasisMismatch(Side side, const BasisLabel &expected, const BasisLabel &actual)
    : std::invalid_argument(
          std::string(side == Side::Left ? "Left" : "Right") + " side basis mismatch: state is in basis '" +
          actual.name() + "' but the change starts from '" + expected.name() + "'."),
      side_(side) {
}

TwoQubitState::TwoQubitState(BasisLabel left_basis, BasisLabel right_basis, const JointTable &amps)
    : left_(std::move(left_basis)), right_(std::move(right_basis)), amps_(amps) {
}

TwoQubitState make_state(BasisLabel left_basis, BasisLabel right_basis, const JointTable &amps) {
    for (double a : amps) {
        if (!std::isfinite(a)) {
            throw std::invalid_argument("Amplitudes must be finite.");
        }
    }
    double norm = std::sqrt(squared_norm(amps));
    if (std::abs(norm - 1) > kInputNormTolerance) {
        std::stringstream ss;
        ss << "Invalid state: amplitude norm " << norm << " deviates from 1 by more than " << kInputNormTolerance
           << ".";
        throw std::invalid_argument(ss.str());
    }
    JointTable unit = amps;
    for (double &a : unit) {
        a /= norm;
    }
    return TwoQubitState(std::move(left_basis), std::move(right_basis), unit);
}

BasisChange::BasisChange(BasisLabel from, BasisLabel to, const Matrix &matrix)
    : from_(std::move(from)), to_(std::move(to)), matrix_(matrix) {
    for (size_t i = 0; i < 2; i++) {
        for (size_t j = 0; j < 2; j++) {
            double dot = matrix_[0][i] * matrix_[0][j] + matrix_[1][i] * matrix_[1][j];
            double expected = i == j ? 1.0 : 0.0;
            if (!(std::abs(dot - expected) <= kInternalTolerance)) {
                throw std::invalid_argument(
                    "Basis change " + from_.name() + "->" + to_.name() + " is not orthogonal.");
            }
        }
    }
}

BasisChange BasisChange::inverse() const {
    Matrix t{{{matrix_[0][0], matrix_[1][0]}, {matrix_[0][1], matrix_[1][1]}}};
    return BasisChange(to_, from_, t);
}

std::array<double, 2> BasisChange::apply(const std::array<double, 2> &coords) const {
    return {
        matrix_[0][0] * coords[0] + matrix_[0][1] * coords[1],
        matrix_[1][0] * coords[0] + matrix_[1][1] * coords[1],
    };
}

BasisChange hardy_basis_change() {
    const double s4 = std::sqrt(0.4);
    const double s6 = std::sqrt(0.6);
    // Columns: |1,R> = (s6, s4), |1,G> = (-s4, s6) in (|2,R>, |2,G>).
    return BasisChange("1", "2", {{{s6, -s4}, {s4, s6}}});
}

BasisChange z_to_x_change() {
    const double h = 1 / std::sqrt(2.0);
    // |+z> = (|+x> + |-x>)/sqrt2, |-z> = (|+x> - |-x>)/sqrt2.
    return BasisChange("z", "x", {{{h, h}, {h, -h}}});
}

TwoQubitState rebasis(
    const TwoQubitState &state, const std::optional<BasisChange> &left, const std::optional<BasisChange> &right) {
    if (left && left->from() != state.left_basis()) {
        throw BasisMismatch(BasisMismatch::Side::Left, left->from(), state.left_basis());
    }
    if (right && right->from() != state.right_basis()) {
        throw BasisMismatch(BasisMismatch::Side::Right, right->from(), state.right_basis());
    }
    const Matrix2 &lm = left ? left->matrix() : kIdentity;
    const Matrix2 &rm = right ? right->matrix() : kIdentity;

    JointTable out{};
    for (const auto &dst : kJointOutcomes) {
        double acc = 0;
        for (const auto &src : kJointOutcomes) {
            acc += lm[static_cast<size_t>(dst.left)][static_cast<size_t>(src.left)] *
                   rm[static_cast<size_t>(dst.right)][static_cast<size_t>(src.right)] * state.amp(src);
        }
        out[dst.index()] = acc;
    }
    return TwoQubitState(
        left ? left->to() : state.left_basis(), right ? right->to() : state.right_basis(), out);
}

std::optional<BasisChange> find_change(
    const BasisLabel &from, const BasisLabel &to, std::span<const BasisChange> changes) {
    if (from == to) {
        return BasisChange(from, to, kIdentity);
    }
    for (const auto &c : changes) {
        if (c.from() == from && c.to() == to) {
            return c;
        }
        if (c.from() == to && c.to() == from) {
            return c.inverse();
        }
    }
    return std::nullopt;
}

TwoQubitState rebase_to(
    const TwoQubitState &state, const SettingPair &target, std::span<const BasisChange> changes) {
    auto left = find_change(state.left_basis(), target.left, changes);
    if (!left) {
        throw std::invalid_argument(
            "No basis change from '" + state.left_basis().name() + "' to '" + target.left.name() +
            "' on the left side.");
    }
    auto right = find_change(state.right_basis(), target.right, changes);
    if (!right) {
        throw std::invalid_argument(
            "No basis change from '" + state.right_basis().name() + "' to '" + target.right.name() +
            "' on the right side.");
    }
    return rebasis(state, left, right);
}

JointTable born_table(const TwoQubitState &state) {
    JointTable p{};
    for (size_t k = 0; k < 4; k++) {
        p[k] = state.amps()[k] * state.amps()[k];
    }
    return p;
}

TwoQubitState ProductState::to_state() const {
    JointTable amps{};
    amps[outcome().index()] = 1;
    return TwoQubitState(left_basis, right_basis, amps);
}

Mixture::Mixture(std::vector<MixtureComponent> components) : components_(std::move(components)) {
    if (components_.empty()) {
        throw std::invalid_argument("Mixture needs at least one component.");
    }
    double total = 0;
    for (const auto &c : components_) {
        if (!(c.weight >= 0) || !std::isfinite(c.weight)) {
            throw std::invalid_argument("Mixture weights must be finite and nonnegative.");
        }
        total += c.weight;
    }
    if (std::abs(total - 1) > kInternalTolerance) {
        throw std::invalid_argument("Mixture weights must sum to 1.");
    }
}

void Behavior::set_row(const SettingPair &setting, const JointTable &row) {
    rows_.insert_or_assign(setting, row);
}

bool Behavior::contains(const SettingPair &setting) const {
    return rows_.contains(setting);
}

const JointTable &Behavior::row(const SettingPair &setting) const {
    auto it = rows_.find(setting);
    if (it == rows_.end()) {
        throw std::out_of_range("Behavior has no row for setting " + setting.key() + ".");
    }
    return it->second;
}

void Behavior::validate(double tol) const {
    if (rows_.empty()) {
        throw std::invalid_argument("Behavior has no rows.");
    }
    for (const auto &[setting, row] : rows_) {
        double total = 0;
        for (const auto &o : kJointOutcomes) {
            double p = row[o.index()];
            if (!std::isfinite(p) || p < -tol || p > 1 + tol) {
                std::stringstream ss;
                ss << "Cell " << setting.key() << ":" << o.name() << " = " << p << " is not a probability.";
                throw std::invalid_argument(ss.str());
            }
            total += p;
        }
        if (std::abs(total - 1) > tol) {
            std::stringstream ss;
            ss << "Row " << setting.key() << " sums to " << total << " instead of 1 (cells " << setting.key()
               << ":RR.." << setting.key() << ":GG).";
            throw std::invalid_argument(ss.str());
        }
    }
}

double Behavior::no_signaling_residual() const {
    double worst = 0;
    for (const auto &[a, ra] : rows_) {
        for (const auto &[b, rb] : rows_) {
            if (a.left == b.left) {
                // Left marginal P(left = R).
                double pa = ra[0] + ra[1];
                double pb = rb[0] + rb[1];
                worst = std::max(worst, std::abs(pa - pb));
            }
            if (a.right == b.right) {
                double pa = ra[0] + ra[2];
                double pb = rb[0] + rb[2];
                worst = std::max(worst, std::abs(pa - pb));
            }
        }
    }
    return worst;
}

Behavior quantum_behavior(const TwoQubitState &state_in_11, const BasisChange &change) {
    const SettingPair &origin = hardy_settings()[0];
    if (state_in_11.bases() != origin) {
        throw std::invalid_argument(
            "quantum_behavior expects a state in basis (1,1), got " + state_in_11.bases().key() + ".");
    }
    if (change.from() != origin.left || change.to() != hardy_settings()[3].left) {
        throw std::invalid_argument("quantum_behavior expects a 1 -> 2 basis change.");
    }
    Behavior b;
    for (const auto &s : hardy_settings()) {
        std::optional<BasisChange> left;
        std::optional<BasisChange> right;
        if (s.left != origin.left) {
            left = change;
        }
        if (s.right != origin.right) {
            right = change;
        }
        b.set_row(s, born_table(rebasis(state_in_11, left, right)));
    }
    return b;
}

Behavior mixture_behavior(
    const Mixture &mixture, std::span<const SettingPair> settings, std::span<const BasisChange> changes) {
    Behavior b;
    for (const auto &s : settings) {
        JointTable row{};
        for (const auto &c : mixture.components()) {
            JointTable p = born_table(rebase_to(c.state.to_state(), s, changes));
            for (size_t k = 0; k < 4; k++) {
                row[k] += c.weight * p[k];
            }
        }
        b.set_row(s, row);
    }
    return b;
}

TwoQubitState phi_plus_state() {
    const double h = 1 / std::sqrt(2.0);
    return make_state("z", "z", {h, 0, 0, h});
}

TwoQubitState phi_minus_state() {
    const double h = 1 / std::sqrt(2.0);
    return make_state("z", "z", {h, 0, 0, -h});
}

TwoQubitState hardy_state() {
    return make_state("1", "1", {0, std::sqrt(0.375), std::sqrt(0.375), -0.5});
}

const Behavior &hardy_behavior() {
    static const Behavior b = quantum_behavior(hardy_state(), hardy_basis_change());
    return b;
}

}  // namespace hardy
