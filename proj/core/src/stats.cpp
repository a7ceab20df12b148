#include "vinesense/stats.hpp"

#include <cmath>
#include <string>

#include "vinesense/errors.hpp"

namespace vinesense {

namespace {

// Lentz's continued fraction for the incomplete beta; converges fast for
// x < (a+1)/(a+b+2), which the caller guarantees.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double students_t_two_sided_p(double t, int dof) {
    if (dof <= 0) return 1.0;
    if (std::isinf(t)) return 0.0;
    double nu = static_cast<double>(dof);
    return regularized_incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
}

RegressionSummary ols_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::size_t n = xs.size();
    if (n != ys.size()) {
        throw DegenerateRegression("xs and ys differ in length (" + std::to_string(n) + " vs " +
                                   std::to_string(ys.size()) + ")");
    }
    if (n < 3) {
        throw DegenerateRegression("need at least 3 points, got " + std::to_string(n));
    }

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mean_x;
        double dy = ys[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        ss_tot += dy * dy;
    }
    // Relative thresholds: exact-zero comparisons are unstable because means
    // of repeated values round, leaving O(eps^2) residue in the sums.
    double nn = static_cast<double>(n);
    if (sxx <= 1e-24 * nn * (1.0 + mean_x * mean_x)) {
        throw DegenerateRegression("x values are constant");
    }

    RegressionSummary out;
    out.n = static_cast<int>(n);
    out.slope = sxy / sxx;
    out.intercept = mean_y - out.slope * mean_x;

    if (ss_tot <= 1e-24 * nn * (1.0 + mean_y * mean_y)) {
        out.slope = 0.0;
        out.intercept = mean_y;
        out.r_squared = 0.0;
        out.p_value = 1.0;
        return out;
    }

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double resid = ys[i] - (out.intercept + out.slope * xs[i]);
        ss_res += resid * resid;
    }
    out.r_squared = 1.0 - ss_res / ss_tot;
    out.r_squared = std::fmin(1.0, std::fmax(0.0, out.r_squared));

    int dof = static_cast<int>(n) - 2;
    double se2 = ss_res / static_cast<double>(dof) / sxx;
    if (se2 <= 0.0) {
        out.p_value = 0.0;  // perfect fit
        return out;
    }
    double t = out.slope / std::sqrt(se2);
    out.p_value = students_t_two_sided_p(t, dof);
    return out;
}

}  // namespace vinesense
