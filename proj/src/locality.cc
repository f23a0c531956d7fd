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

#include "hardy/locality.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hardy/simplex.h"

namespace hardy {

namespace {

constexpr size_t kCells = 16;
constexpr size_t kVertices = 16;

CellVector vertex_cells(DeterministicStrategy s) {
    CellVector v{};
    for (size_t k = 0; k < 4; k++) {
        int lm = static_cast<int>(k / 2) + 1;
        int rm = static_cast<int>(k % 2) + 1;
        v[k * 4 + s.respond(lm, rm).index()] = 1;
    }
    return v;
}

double dot(const CellVector &a, const CellVector &b) {
    double t = 0;
    for (size_t i = 0; i < kCells; i++) {
        t += a[i] * b[i];
    }
    return t;
}

Witness make_witness(const CellVector &coefficients, const CellVector &cells, Witness::Source source) {
    double best = -std::numeric_limits<double>::infinity();
    for (auto s : deterministic_strategies()) {
        best = std::max(best, dot(coefficients, vertex_cells(s)));
    }
    return Witness{coefficients, dot(coefficients, cells), best, source};
}

}  // namespace

std::string cell_name(size_t i) {
    return hardy_settings()[i / 4].key() + ":" + JointOutcome::from_index(i % 4).name();
}

CellVector behavior_cells(const Behavior &b) {
    CellVector cells{};
    const auto &settings = hardy_settings();
    for (size_t k = 0; k < 4; k++) {
        if (!b.contains(settings[k])) {
            throw std::invalid_argument("Behavior lacks Hardy setting " + settings[k].key() + ".");
        }
        const JointTable &row = b.row(settings[k]);
        for (size_t j = 0; j < 4; j++) {
            cells[k * 4 + j] = row[j];
        }
    }
    return cells;
}

ContextAssignment DeterministicStrategy::assignment() const {
    return ContextAssignment({respond(1, 1), respond(1, 2), respond(2, 1), respond(2, 2)});
}

const std::array<DeterministicStrategy, 16> &deterministic_strategies() {
    static const std::array<DeterministicStrategy, 16> all = [] {
        std::array<DeterministicStrategy, 16> out{
            DeterministicStrategy(0), DeterministicStrategy(1), DeterministicStrategy(2), DeterministicStrategy(3),
            DeterministicStrategy(4), DeterministicStrategy(5), DeterministicStrategy(6), DeterministicStrategy(7),
            DeterministicStrategy(8), DeterministicStrategy(9), DeterministicStrategy(10), DeterministicStrategy(11),
            DeterministicStrategy(12), DeterministicStrategy(13), DeterministicStrategy(14), DeterministicStrategy(15),
        };
        return out;
    }();
    return all;
}

Behavior strategy_behavior(DeterministicStrategy s) {
    Behavior b;
    CellVector v = vertex_cells(s);
    for (size_t k = 0; k < 4; k++) {
        b.set_row(hardy_settings()[k], {v[k * 4], v[k * 4 + 1], v[k * 4 + 2], v[k * 4 + 3]});
    }
    return b;
}

CellVector hardy_witness_coefficients() {
    CellVector c{};
    constexpr size_t kRR = 0;
    constexpr size_t kGG = 3;
    c[0 * 4 + kRR] = -1;
    c[1 * 4 + kGG] = -1;
    c[2 * 4 + kGG] = -1;
    c[3 * 4 + kGG] = 1;
    return c;
}

double hardy_witness(const Behavior &b) {
    const auto &s = hardy_settings();
    const JointOutcome rr{Outcome::R, Outcome::R};
    const JointOutcome gg{Outcome::G, Outcome::G};
    for (const auto &setting : s) {
        if (!b.contains(setting)) {
            throw std::invalid_argument("Hardy witness needs setting " + setting.key() + ".");
        }
    }
    return b.at(s[3], gg) - b.at(s[1], gg) - b.at(s[2], gg) - b.at(s[0], rr);
}

MembershipResult local_membership(const Behavior &b) {
    CellVector cells = behavior_cells(b);
    for (const auto &kv : b.rows()) {
        if (!hardy_setting_index(kv.first)) {
            throw std::invalid_argument("Unexpected setting " + kv.first.key() + " in behavior.");
        }
    }
    b.validate(kInputNormTolerance);

    // Columns: w_0..w_15 (vertex weights), e+_0..e+_15, e-_0..e-_15.
    // Rows: V w + e+ - e- = b for each cell, sum w = 1.
    const Eigen::Index m = kCells + 1;
    const Eigen::Index n = kVertices + 2 * kCells;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n);
    Eigen::VectorXd rhs(m);
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(n);
    const auto &strategies = deterministic_strategies();
    for (size_t s = 0; s < kVertices; s++) {
        CellVector v = vertex_cells(strategies[s]);
        for (size_t i = 0; i < kCells; i++) {
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) = v[i];
        }
        A(kCells, static_cast<Eigen::Index>(s)) = 1;
    }
    for (size_t i = 0; i < kCells; i++) {
        auto row = static_cast<Eigen::Index>(i);
        A(row, static_cast<Eigen::Index>(kVertices + i)) = 1;
        A(row, static_cast<Eigen::Index>(kVertices + kCells + i)) = -1;
        cost(static_cast<Eigen::Index>(kVertices + i)) = 1;
        cost(static_cast<Eigen::Index>(kVertices + kCells + i)) = 1;
        rhs(row) = cells[i];
    }
    rhs(kCells) = 1;

    // Start at vertex 0 with the slack of each cell absorbing the mismatch.
    std::vector<int> basis;
    CellVector v0 = vertex_cells(strategies[0]);
    for (size_t i = 0; i < kCells; i++) {
        bool above = cells[i] - v0[i] >= 0;
        basis.push_back(static_cast<int>(above ? kVertices + i : kVertices + kCells + i));
    }
    basis.push_back(0);

    LpSolution lp = solve_from_basis(A, rhs, cost, basis);
    if (lp.status != LpStatus::Optimal) {
        throw std::runtime_error("Local membership LP did not reach an optimum.");
    }

    std::array<double, 16> w{};
    double wsum = 0;
    for (size_t s = 0; s < kVertices; s++) {
        w[s] = std::max(lp.x(static_cast<Eigen::Index>(s)), 0.0);
        wsum += w[s];
    }
    for (double &x : w) {
        x /= wsum;
    }
    double residual = 0;
    for (size_t i = 0; i < kCells; i++) {
        double mixed = 0;
        for (size_t s = 0; s < kVertices; s++) {
            mixed += w[s] * vertex_cells(strategies[s])[i];
        }
        residual = std::max(residual, std::abs(cells[i] - mixed));
    }

    MembershipResult result{MembershipResult::Verdict::Feasible, std::nullopt, residual, std::nullopt, lp.objective};
    if (residual <= kFeasibilityResidual) {
        result.weights = w;
        return result;
    }

    result.verdict = MembershipResult::Verdict::Infeasible;
    CellVector dual{};
    for (size_t i = 0; i < kCells; i++) {
        dual[i] = lp.duals(static_cast<Eigen::Index>(i));
    }
    Witness witness = make_witness(dual, cells, Witness::Source::Dual);
    if (witness.margin() < kWitnessMargin) {
        Witness hardy = make_witness(hardy_witness_coefficients(), cells, Witness::Source::Hardy);
        if (hardy.margin() < kWitnessMargin) {
            throw std::runtime_error("Behavior is outside the local polytope but no witness clears the margin.");
        }
        witness = hardy;
    }
    result.witness = witness;
    return result;
}

double noncontextual_fraction(const Behavior &b) {
    CellVector cells = behavior_cells(b);
    b.validate(kInputNormTolerance);
    // Noncontextual assignments are exactly the ones induced by strategies,
    // one each, so the 256-term sum collapses to 16 products.
    double total = 0;
    for (auto s : deterministic_strategies()) {
        ContextAssignment a = s.assignment();
        double p = 1;
        for (size_t k = 0; k < 4; k++) {
            p *= cells[k * 4 + a[k].index()];
        }
        total += p;
    }
    return total;
}

}  // namespace hardy
