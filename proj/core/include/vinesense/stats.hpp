#pragma once

#include <vector>

namespace vinesense {

struct RegressionSummary {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;  // in [0, 1]; defined as 0 when the ys carry no variance
    double p_value = 1.0;    // two-sided, slope != 0, t-test with n-2 dof
    int n = 0;
};

// Continued-fraction regularized incomplete beta I_x(a, b); exposed because the
// t-test below is built on it and callers may want the CDF directly.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value for a t statistic with dof degrees of freedom, computed
// directly as I_{dof/(dof+t^2)}(dof/2, 1/2) for stability at large |t|.
double students_t_two_sided_p(double t, int dof);

// Least-squares line fit. Requires n >= 3 and non-constant xs (throws
// DegenerateRegression otherwise). Constant ys are well-defined: slope 0,
// r_squared 0, p_value 1. A perfect fit reports p_value 0.
RegressionSummary ols_fit(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace vinesense
