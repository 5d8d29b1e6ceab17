#include "arcad/lp.hpp"

#include <cassert>
#include <limits>
#include <vector>

#include "arcad/errors.hpp"

namespace arcad::lp {

namespace {
constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-10;
constexpr double kFeasEps = 1e-9;
} // namespace

// Standard-form phase-1 simplex. The box problem
//   A x = b, lo <= x <= hi
// is shifted to y = x - lo in [0, c] and augmented with slack rows
// y_i + s_i = c_i so every variable is only lower-bounded. Artificials are
// added on the equality rows (sign-adjusted so the rhs is non-negative) and
// their sum is minimized; feasible iff the optimum is zero.
FeasibilityResult solve_box_equality_feasibility(const Eigen::MatrixXd& A,
                                                 const VecX& b,
                                                 const VecX& lo,
                                                 const VecX& hi) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (b.size() != m || lo.size() != n || hi.size() != n) {
        throw DimensionError("LP dimensions disagree");
    }

    const VecX cap = hi - lo;
    if ((cap.array() < 0.0).any()) return {false, {}};

    VecX rhs_eq = b - A * lo;

    const int rows = m + n;
    const int cols = n + n + m; // y, s, artificials
    Eigen::MatrixXd tab(rows, cols + 1);
    tab.setZero();

    // Equality rows, flipped so rhs >= 0, artificial identity block.
    for (int i = 0; i < m; ++i) {
        const double sign = rhs_eq(i) < 0.0 ? -1.0 : 1.0;
        tab.block(i, 0, 1, n) = sign * A.row(i);
        tab(i, 2 * n + i) = 1.0;
        tab(i, cols) = sign * rhs_eq(i);
    }
    // Bound rows y_i + s_i = cap_i with s_i basic.
    for (int i = 0; i < n; ++i) {
        tab(m + i, i) = 1.0;
        tab(m + i, n + i) = 1.0;
        tab(m + i, cols) = cap(i);
    }

    std::vector<int> basis(rows);
    for (int i = 0; i < m; ++i) basis[i] = 2 * n + i;
    for (int i = 0; i < n; ++i) basis[m + i] = n + i;

    // Phase-1 cost: sum of artificials.
    auto is_artificial = [&](int j) { return j >= 2 * n; };

    VecX cost = VecX::Zero(cols);
    for (int j = 2 * n; j < cols; ++j) cost(j) = 1.0;

    // Reduced-cost row maintained by elimination.
    VecX z = VecX::Zero(cols + 1);
    for (int i = 0; i < rows; ++i) {
        if (cost(basis[i]) != 0.0) z -= tab.row(i).transpose();
    }
    for (int j = 0; j < cols; ++j) z(j) += cost(j);

    const int max_iters = 50 * (rows + cols);
    for (int iter = 0; iter < max_iters; ++iter) {
        // Bland's rule: smallest index with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (z(j) < -kCostEps) { enter = j; break; }
        }
        if (enter < 0) break; // optimal

        int leave_row = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < rows; ++i) {
            const double a = tab(i, enter);
            if (a > kPivotEps) {
                const double ratio = tab(i, cols) / a;
                if (ratio < best_ratio - kPivotEps ||
                    (ratio < best_ratio + kPivotEps &&
                     (leave_row < 0 || basis[i] < basis[leave_row]))) {
                    best_ratio = ratio;
                    leave_row = i;
                }
            }
        }
        if (leave_row < 0) break; // unbounded direction; cannot occur in phase 1

        // Pivot.
        tab.row(leave_row) /= tab(leave_row, enter);
        for (int i = 0; i < rows; ++i) {
            if (i != leave_row && std::abs(tab(i, enter)) > 0.0) {
                tab.row(i) -= tab(i, enter) * tab.row(leave_row);
            }
        }
        z -= z(enter) * tab.row(leave_row).transpose();
        basis[leave_row] = enter;
    }

    double artificial_sum = 0.0;
    for (int i = 0; i < rows; ++i) {
        if (is_artificial(basis[i])) artificial_sum += std::max(0.0, tab(i, cols));
    }
    if (artificial_sum > kFeasEps) return {false, {}};

    VecX y = VecX::Zero(n);
    for (int i = 0; i < rows; ++i) {
        if (basis[i] < n) y(basis[i]) = tab(i, cols);
    }
    // Clip roundoff outside the box.
    y = y.cwiseMax(VecX::Zero(n)).cwiseMin(cap);
    return {true, lo + y};
}

} // namespace arcad::lp
