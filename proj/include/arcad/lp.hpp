#pragma once

#include <Eigen/Dense>

#include "arcad/math.hpp"

namespace arcad::lp {

struct FeasibilityResult {
    bool feasible = false;
    VecX point; // one feasible x when feasible, else empty
};

/// Decides whether {x : A x = b, lo <= x <= hi} is non-empty and returns a
/// point of it. Exact decision via a phase-1 simplex (Bland's rule); intended
/// for small systems (tens of variables).
FeasibilityResult solve_box_equality_feasibility(const Eigen::MatrixXd& A,
                                                 const VecX& b,
                                                 const VecX& lo,
                                                 const VecX& hi);

} // namespace arcad::lp
