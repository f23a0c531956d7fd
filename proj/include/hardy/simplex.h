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

#ifndef HARDY_SIMPLEX_H
#define HARDY_SIMPLEX_H

#include <Eigen/Dense>
#include <vector>

namespace hardy {

enum class LpStatus { Optimal, Unbounded, IterationLimit };

struct LpSolution {
    LpStatus status;
    Eigen::VectorXd x;
    /// Simplex multipliers y = c_B^T B^-1, one per equality row.
    Eigen::VectorXd duals;
    double objective;
    int iterations;
};

/// Primal simplex for  min c^T x  s.t.  A x = b, x >= 0,  started from a
/// caller-supplied feasible basis. Uses Bland's rule, so degenerate problems
/// terminate. The basis inverse is refactored every iteration, which is
/// fine for the dozens-of-rows problems this is used on.
///
/// Throws std::invalid_argument if dimensions disagree, the basis is
/// singular, or the starting basic solution is infeasible.
LpSolution solve_from_basis(
    const Eigen::MatrixXd &A,
    const Eigen::VectorXd &b,
    const Eigen::VectorXd &c,
    std::vector<int> basis,
    int max_iterations = 10000);

}  // namespace hardy

#endif
