#pragma once

// Collapse-rate sensitivity: converts a background power budget into the
// smallest detectable collapse rate, scans it against depth, inverts the
// scan for a target rate, and maps the reach across correlation lengths.

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslbg/core.hpp"
#include "cslbg/fit.hpp"
#include "cslbg/muon.hpp"

namespace cslbg {

//! Smallest collapse rate that would stand out against the given background
//! power: the rate whose heating equals margin * background_power, so a
//! detection claim needs the collapse signal to dominate the background by
//! the margin factor. Exactly linear in background_power and in margin, and
//! proportional to r_c^2.
inline double detectable_lambda(double background_power_W, const DetectorSpec& det,
                                const CslParams& p, double margin = 100.0,
                                const Constants& c = paper_constants())
{
    validate(det);
    validate(p);
    if (!(background_power_W >= 0) || !std::isfinite(background_power_W))
        throw std::domain_error("background power must be finite and >= 0");
    if (!(margin > 0) || !std::isfinite(margin))
        throw std::domain_error("margin must be finite and > 0");
    const double heating_per_lambda = csl_power_W({1.0, p.r_c_m}, det.mass_kg(), c);
    return margin * background_power_W / heating_per_lambda;
}

struct DepthScanPoint {
    double depth_kmwe;
    double event_rate_per_s;
    double event_rate_err_per_s;
    double muon_power_W;
    double muon_power_err_W;
    double detectable_lambda_per_s;
};

struct DepthScanResult {
    std::vector<DepthScanPoint> points;
    FitResult lambda_fit;  //!< log10(lambda_det) vs depth
    FitResult power_fit;   //!< log10(P_mu) vs depth
    FitResult rate_fit;    //!< log10(event rate) vs depth
};

//! Evaluate the muon background and the detectable collapse rate across the
//! covered depth range of the table, then fit log10 trends vs depth. The
//! power and lambda fits are weighted by the propagated power errors; the
//! rate fit is weighted by the intensity errors.
inline DepthScanResult lambda_depth_scan(const DetectorSpec& det,
                                         const DepthIntensityTable& table,
                                         const MeanEnergyParams& params, const CslParams& p,
                                         double margin = 100.0,
                                         const std::vector<double>& depths_kmwe = {},
                                         FaceConvention faces = FaceConvention::top_plus_sides,
                                         const Constants& c = paper_constants())
{
    validate(table);
    std::vector<double> depths = depths_kmwe;
    if (depths.empty())
        for (const auto& r : table.rows) depths.push_back(r.depth_kmwe);

    DepthScanResult out;
    std::vector<double> x, power, power_err, lambda, rate, rate_err;
    for (double d : depths) {
        const auto mp = muon_power(det, d, table, params, faces, c);
        const double ld = detectable_lambda(mp.power_W, det, p, margin, c);
        out.points.push_back({d, mp.event_rate_per_s, mp.event_rate_err_per_s, mp.power_W,
                              mp.power_err_W, ld});
        x.push_back(d);
        power.push_back(mp.power_W);
        power_err.push_back(mp.power_err_W);
        lambda.push_back(ld);
        rate.push_back(mp.event_rate_per_s);
        rate_err.push_back(mp.event_rate_err_per_s);
    }
    out.power_fit = weighted_log_linear_fit(x, power, power_err);
    // lambda is background power over a constant, so its log trend shares the
    // power fit's relative errors
    std::vector<double> lambda_err(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i)
        lambda_err[i] = power[i] > 0 ? lambda[i] * power_err[i] / power[i] : 0.0;
    out.lambda_fit = weighted_log_linear_fit(x, lambda, lambda_err);
    out.rate_fit = weighted_log_linear_fit(x, rate, rate_err);
    return out;
}

//! Depth at which the detectable collapse rate first reaches the target,
//! found by bisection on log10(lambda_det(depth)) over the table range.
//! Tolerance is on depth, in km.w.e. Throws out_of_range when the target is
//! not bracketed, reporting the achievable range.
inline double depth_for_lambda(double target_lambda_per_s, const DetectorSpec& det,
                               const DepthIntensityTable& table,
                               const MeanEnergyParams& params, const CslParams& p,
                               double margin = 100.0, double depth_tol_kmwe = 1e-3,
                               FaceConvention faces = FaceConvention::top_plus_sides,
                               const Constants& c = paper_constants())
{
    validate(table);
    if (!(target_lambda_per_s > 0) || !std::isfinite(target_lambda_per_s))
        throw std::domain_error("target collapse rate must be finite and > 0");
    if (!(depth_tol_kmwe > 0))
        throw std::domain_error("depth tolerance must be > 0");

    auto lambda_at = [&](double d) {
        return detectable_lambda(muon_power(det, d, table, params, faces, c).power_W, det, p,
                                 margin, c);
    };
    double lo = table.min_depth_kmwe(), hi = table.max_depth_kmwe();
    const double l_lo = lambda_at(lo), l_hi = lambda_at(hi);
    // lambda_det falls with depth, so the shallow end gives the largest value
    if (target_lambda_per_s > l_lo || target_lambda_per_s < l_hi) {
        char msg[192];
        std::snprintf(msg, sizeof msg,
                      "target lambda %.6e /s is outside the achievable range "
                      "[%.6e, %.6e] /s for depths %g to %g km.w.e",
                      target_lambda_per_s, l_hi, l_lo, lo, hi);
        throw std::out_of_range(msg);
    }
    const double target_log = std::log10(target_lambda_per_s);
    while (hi - lo > depth_tol_kmwe) {
        const double mid = 0.5 * (lo + hi);
        if (std::log10(lambda_at(mid)) > target_log)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct ContourPoint {
    double r_c_m;
    double detectable_lambda_per_s;
};

//! Detectable collapse rate as a function of correlation length at fixed
//! depth. The rate scales exactly as (r_c / reference)^2 because the
//! heating carries 1/r_c^2.
struct ExclusionContour {
    double depth_kmwe;
    double background_power_W;
    double margin;
    std::vector<ContourPoint> points;
};

inline ExclusionContour exclusion_contour(const DetectorSpec& det, double depth_kmwe,
                                          const DepthIntensityTable& table,
                                          const MeanEnergyParams& params,
                                          const std::vector<double>& r_c_values_m,
                                          double margin = 100.0,
                                          FaceConvention faces = FaceConvention::top_plus_sides,
                                          const Constants& c = paper_constants())
{
    if (r_c_values_m.empty())
        throw std::invalid_argument("exclusion contour needs at least one correlation length");
    const auto mp = muon_power(det, depth_kmwe, table, params, faces, c);
    ExclusionContour out{depth_kmwe, mp.power_W, margin, {}};
    const double ref_r_c = 1e-7;
    const double lambda_ref = detectable_lambda(mp.power_W, det, {1e-16, ref_r_c}, margin, c);
    for (double r : r_c_values_m) {
        if (!(r > 0) || !std::isfinite(r))
            throw std::domain_error("correlation length must be finite and > 0");
        const double scale = (r / ref_r_c) * (r / ref_r_c);
        out.points.push_back({r, lambda_ref * scale});
    }
    return out;
}

} // namespace cslbg
