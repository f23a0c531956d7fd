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

#include "hardy/simplex.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hardy {

namespace {

constexpr double kPivotTolerance = 1e-11;
constexpr double kReducedCostTolerance = 1e-12;
constexpr double kFeasibilityTolerance = 1e-9;

}  // namespace

LpSolution solve_from_basis(
    const Eigen::MatrixXd &A,
    const Eigen::VectorXd &b,
    const Eigen::VectorXd &c,
    std::vector<int> basis,
    int max_iterations) {
    const Eigen::Index m = A.rows();
    const Eigen::Index n = A.cols();
    if (b.size() != m || c.size() != n || static_cast<Eigen::Index>(basis.size()) != m) {
        throw std::invalid_argument("solve_from_basis: dimension mismatch.");
    }

    std::vector<bool> is_basic(static_cast<size_t>(n), false);
    for (int j : basis) {
        if (j < 0 || j >= n || is_basic[static_cast<size_t>(j)]) {
            throw std::invalid_argument("solve_from_basis: bad basis index.");
        }
        is_basic[static_cast<size_t>(j)] = true;
    }

    Eigen::MatrixXd B(m, m);
    Eigen::VectorXd cb(m);
    Eigen::VectorXd xb;
    Eigen::VectorXd y;
    Eigen::FullPivLU<Eigen::MatrixXd> lu;

    auto factor = [&]() {
        for (Eigen::Index i = 0; i < m; i++) {
            B.col(i) = A.col(basis[static_cast<size_t>(i)]);
            cb(i) = c(basis[static_cast<size_t>(i)]);
        }
        lu.compute(B);
        if (!lu.isInvertible()) {
            throw std::invalid_argument("solve_from_basis: singular basis.");
        }
        xb = lu.solve(b);
        y = lu.transpose().solve(cb);
    };

    factor();
    if (xb.minCoeff() < -kFeasibilityTolerance) {
        throw std::invalid_argument("solve_from_basis: starting basis is infeasible.");
    }

    LpSolution sol{LpStatus::IterationLimit, {}, {}, 0, 0};
    for (; sol.iterations < max_iterations; sol.iterations++) {
        // Bland: lowest-index improving column enters.
        Eigen::Index entering = -1;
        for (Eigen::Index j = 0; j < n; j++) {
            if (!is_basic[static_cast<size_t>(j)] && c(j) - y.dot(A.col(j)) < -kReducedCostTolerance) {
                entering = j;
                break;
            }
        }
        if (entering < 0) {
            sol.status = LpStatus::Optimal;
            break;
        }

        Eigen::VectorXd u = lu.solve(A.col(entering));
        Eigen::Index leaving = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; i++) {
            if (u(i) > kPivotTolerance) {
                double ratio = std::max(xb(i), 0.0) / u(i);
                // Bland: ties broken by lowest variable index.
                if (ratio < best_ratio ||
                    (ratio == best_ratio && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leaving)])) {
                    best_ratio = ratio;
                    leaving = i;
                }
            }
        }
        if (leaving < 0) {
            sol.status = LpStatus::Unbounded;
            break;
        }
        is_basic[static_cast<size_t>(basis[static_cast<size_t>(leaving)])] = false;
        is_basic[static_cast<size_t>(entering)] = true;
        basis[static_cast<size_t>(leaving)] = static_cast<int>(entering);
        factor();
    }

    sol.x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < m; i++) {
        sol.x(basis[static_cast<size_t>(i)]) = std::max(xb(i), 0.0);
    }
    sol.duals = y;
    sol.objective = c.dot(sol.x);
    return sol;
}

}  // namespace hardy
