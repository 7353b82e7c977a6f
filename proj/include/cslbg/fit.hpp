#pragma once

// Weighted least-squares line fits, including the log10-space variant used
// for exponential depth and thickness trends.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cslbg {

//! Straight-line fit y = slope * x + intercept with 1-sigma parameter errors
//! and goodness-of-fit summaries. For the log-linear variant, y is log10 of
//! the input values.
struct FitResult {
    double slope;
    double intercept;
    double slope_err;
    double intercept_err;
    double r_squared;
    double chi2;       //!< weighted residual sum; 0 when the fit is unweighted
    std::size_t n_points;
    bool weighted;
};

namespace detail {

inline FitResult weighted_linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                                     const std::vector<double>& w, bool weighted)
{
    const std::size_t n = x.size();
    double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        S += w[i];
        Sx += w[i] * x[i];
        Sy += w[i] * y[i];
        Sxx += w[i] * x[i] * x[i];
        Sxy += w[i] * x[i] * y[i];
    }
    const double delta = S * Sxx - Sx * Sx;
    if (!(delta > 0) || !std::isfinite(delta))
        throw std::domain_error("line fit is degenerate: x values do not span a range");
    FitResult r{};
    r.n_points = n;
    r.weighted = weighted;
    r.slope = (S * Sxy - Sx * Sy) / delta;
    r.intercept = (Sxx * Sy - Sx * Sxy) / delta;
    r.slope_err = std::sqrt(S / delta);
    r.intercept_err = std::sqrt(Sxx / delta);

    const double y_mean = Sy / S;
    double ss_res = 0, ss_tot = 0, chi2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit_i = r.slope * x[i] + r.intercept;
        ss_res += w[i] * (y[i] - fit_i) * (y[i] - fit_i);
        ss_tot += w[i] * (y[i] - y_mean) * (y[i] - y_mean);
        chi2 += w[i] * (y[i] - fit_i) * (y[i] - fit_i);
    }
    r.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    r.chi2 = weighted ? chi2 : 0.0;

    if (!weighted && n > 2) {
        // scale the covariance by the residual variance so the unweighted
        // parameter errors reflect the scatter actually present
        const double s2 = ss_res / static_cast<double>(n - 2);
        r.slope_err = std::sqrt(s2 * S / delta);
        r.intercept_err = std::sqrt(s2 * Sxx / delta);
        r.chi2 = ss_res;
    }
    return r;
}

} // namespace detail

//! Fit log10(y) = slope * x + intercept. Each y error is mapped to a log10
//! error sigma_log = y_err / (y ln 10) and the weight is 1/sigma_log^2.
//! Passing all-zero errors (or an empty error vector) selects an unweighted
//! fit; mixing zero and nonzero errors is rejected since a zero error would
//! mean an infinite weight.
inline FitResult weighted_log_linear_fit(const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         const std::vector<double>& y_err = {})
{
    if (x.size() != y.size())
        throw std::invalid_argument("fit needs matching x and y lengths, got "
                                    + std::to_string(x.size()) + " and "
                                    + std::to_string(y.size()));
    if (!y_err.empty() && y_err.size() != y.size())
        throw std::invalid_argument("fit error vector length " + std::to_string(y_err.size())
                                    + " does not match data length " + std::to_string(y.size()));
    if (x.size() < 2)
        throw std::invalid_argument("fit needs at least 2 points, got "
                                    + std::to_string(x.size()));

    bool any_zero = y_err.empty(), any_nonzero = false;
    for (double e : y_err) {
        if (!(e >= 0) || !std::isfinite(e))
            throw std::domain_error("fit errors must be finite and >= 0");
        (e == 0 ? any_zero : any_nonzero) = true;
    }
    if (any_zero && any_nonzero)
        throw std::invalid_argument(
            "fit errors mix zero and nonzero entries; use all-zero for an unweighted fit");
    const bool weighted = any_nonzero;

    const std::size_t n = x.size();
    std::vector<double> ly(n), w(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]))
            throw std::domain_error("fit x values must be finite");
        if (!(y[i] > 0) || !std::isfinite(y[i]))
            throw std::domain_error("log-linear fit needs y > 0, got "
                                    + std::to_string(y[i]) + " at point "
                                    + std::to_string(i + 1));
        ly[i] = std::log10(y[i]);
        if (weighted) {
            const double sigma_log = y_err[i] / (y[i] * std::log(10.0));
            w[i] = 1.0 / (sigma_log * sigma_log);
        }
    }
    return detail::weighted_linear_fit(x, ly, w, weighted);
}

//! Plain linear fit in the given coordinates (no log transform), unweighted.
inline FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear fit needs matching vectors with >= 2 points");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw std::domain_error("linear fit values must be finite");
    std::vector<double> w(x.size(), 1.0);
    return detail::weighted_linear_fit(x, y, w, false);
}

} // namespace cslbg
