#pragma once

// Gamma background power absorbed by a shielded cubic absorber.
//
// Each spectrum bin contributes
//     E_mid * J_bin * A * s(E_mid) * p(E_mid) * f_en(E_mid)
// where s is the shield transmission, p the interaction probability in the
// absorber and f_en the fraction of photon energy retained as heat.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslbg/attenuation.hpp"
#include "cslbg/core.hpp"
#include "cslbg/errors.hpp"

namespace cslbg {

struct SpectrumBin {
    double e_low_MeV;
    double e_high_MeV;
    double flux_cm2_s;     //!< integral flux in the bin [1/cm^2/s]
    double flux_err_cm2_s; //!< absolute uncertainty on the bin flux
};

//! Binned photon flux, ordered and non-overlapping in energy.
struct GammaSpectrum {
    std::vector<SpectrumBin> bins;
};

inline void validate(const GammaSpectrum& s)
{
    for (std::size_t i = 0; i < s.bins.size(); ++i) {
        const auto& b = s.bins[i];
        const std::string where = "gamma spectrum bin " + std::to_string(i + 1);
        if (!(b.e_low_MeV >= 0) || !(b.e_high_MeV > b.e_low_MeV))
            throw validation_error(where + ": need 0 <= e_low < e_high");
        if (!(b.flux_cm2_s >= 0) || !std::isfinite(b.flux_cm2_s))
            throw validation_error(where + ": flux must be finite and >= 0");
        if (!(b.flux_err_cm2_s >= 0) || !std::isfinite(b.flux_err_cm2_s))
            throw validation_error(where + ": flux error must be finite and >= 0");
        if (i > 0 && b.e_low_MeV < s.bins[i - 1].e_high_MeV)
            throw validation_error(where + ": bins overlap or are out of order");
    }
}

//! Arithmetic midpoint used as the bin's representative energy.
inline double bin_mid_MeV(const SpectrumBin& b)
{
    return 0.5 * (b.e_low_MeV + b.e_high_MeV);
}

//! Photon collection area convention.
enum class IncidentArea {
    all_faces,  //!< A = 6 side^2 (ambient flux on the full cube surface)
    single_face //!< A = side^2
};

inline double incident_area_cm2(const DetectorSpec& det, IncidentArea a)
{
    const double face = det.side_cm * det.side_cm;
    return a == IncidentArea::all_faces ? 6.0 * face : face;
}

struct GammaPowerOptions {
    IncidentArea area = IncidentArea::all_faces;
    PathModel path = PathModel::side;
    //! Replace direct bin summation by least-squares lines fitted to the
    //! per-bin power density over the ranges 0-0.5, 0.5-1, 1-2, 2-3 MeV and
    //! integrate those lines (legacy figure-reproduction mode).
    bool piecewise_fit = false;
};

struct BinContribution {
    double e_mid_MeV;
    double power_W;
    double power_err_W;
};

struct GammaPowerResult {
    double power_W = 0;
    double power_err_W = 0; //!< flux errors propagated in quadrature across bins
    std::vector<BinContribution> bins;
};

namespace detail {

//! Integral over [lo, hi] of the unweighted least-squares line through
//! (x_i, y_i), clamped so a negative line segment cannot produce negative
//! power. Falls back to sum(y_i * w_i) when fewer than 2 points.
inline double integrate_fitted_line(const std::vector<double>& x, const std::vector<double>& y,
                                    const std::vector<double>& w, double lo, double hi)
{
    if (x.size() < 2) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += y[i] * w[i];
        return s;
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += y[i] * w[i];
        return s;
    }
    const double b = (n * sxy - sx * sy) / den;
    const double a = (sy - b * sx) / n;
    // integrate max(a + b x, 0) over [lo, hi]
    const double ylo = a + b * lo;
    const double yhi = a + b * hi;
    if (ylo >= 0 && yhi >= 0) return 0.5 * (ylo + yhi) * (hi - lo);
    if (ylo <= 0 && yhi <= 0) return 0.0;
    const double x0 = -a / b; // sign change inside [lo, hi]
    if (ylo > 0) return 0.5 * ylo * (x0 - lo);
    return 0.5 * yhi * (hi - x0);
}

} // namespace detail

//! Heating power [W] from the binned gamma flux after the shield.
//! Linear in the bin fluxes. Throws std::out_of_range (naming the bin) if a
//! bin midpoint falls outside either attenuation table.
inline GammaPowerResult gamma_power(const DetectorSpec& det, const ShieldSpec& shield,
                                    const GammaSpectrum& spectrum,
                                    const AttenuationTable& shield_table,
                                    const AttenuationTable& detector_table,
                                    const GammaPowerOptions& opts = {},
                                    const Constants& c = paper_constants())
{
    validate(det);
    validate(shield);
    validate(spectrum);
    if (spectrum.bins.empty())
        throw std::domain_error("gamma spectrum has no bins");

    const double area = incident_area_cm2(det, opts.area);
    GammaPowerResult out;
    out.bins.reserve(spectrum.bins.size());
    double err2 = 0;
    for (std::size_t i = 0; i < spectrum.bins.size(); ++i) {
        const auto& b = spectrum.bins[i];
        const double e = bin_mid_MeV(b);
        double s, p, f;
        try {
            s = shield_transmission(shield, shield_table, e);
            p = detector_absorption_fraction(det, detector_table, e, opts.path);
            f = energy_absorbed_fraction(det, detector_table, e, opts.path);
        } catch (const std::out_of_range& ex) {
            throw std::out_of_range("spectrum bin " + std::to_string(i + 1) + " (midpoint "
                                    + std::to_string(e) + " MeV): " + ex.what());
        }
        const double per_flux = e * area * s * p * f * c.MeV_to_J;
        const double w = b.flux_cm2_s * per_flux;
        const double we = b.flux_err_cm2_s * per_flux;
        out.bins.push_back({e, w, we});
        out.power_W += w;
        err2 += we * we;
    }
    out.power_err_W = std::sqrt(err2);

    if (opts.piecewise_fit) {
        // Fit the per-bin power density (W/MeV at the bin midpoint) with one
        // straight line per energy range and integrate the lines instead.
        static constexpr double edges[] = {0.0, 0.5, 1.0, 2.0, 3.0};
        double total = 0;
        for (std::size_t r = 0; r + 1 < std::size(edges); ++r) {
            std::vector<double> x, y, w;
            for (std::size_t i = 0; i < spectrum.bins.size(); ++i) {
                const auto& b = spectrum.bins[i];
                const double e = bin_mid_MeV(b);
                if (e < edges[r] || e >= edges[r + 1]) continue;
                const double width = b.e_high_MeV - b.e_low_MeV;
                x.push_back(e);
                y.push_back(out.bins[i].power_W / width);
                w.push_back(width);
            }
            total += detail::integrate_fitted_line(x, y, w, edges[r], edges[r + 1]);
        }
        // Bins falling outside [0, 3] MeV keep their direct contribution.
        for (std::size_t i = 0; i < spectrum.bins.size(); ++i) {
            const double e = out.bins[i].e_mid_MeV;
            if (e >= 3.0) total += out.bins[i].power_W;
        }
        out.power_W = total;
    }
    return out;
}

struct ThicknessPoint {
    double thickness_cm;
    double power_W;
    double power_err_W;
};

//! Absorbed gamma power as a function of shield thickness. The shield
//! material is taken from the shield attenuation table. Thicknesses must be
//! non-negative and strictly increasing.
inline std::vector<ThicknessPoint> shield_scan(const DetectorSpec& det,
                                               const GammaSpectrum& spectrum,
                                               const AttenuationTable& shield_table,
                                               const AttenuationTable& detector_table,
                                               const std::vector<double>& thicknesses_cm,
                                               const GammaPowerOptions& opts = {},
                                               const Constants& c = paper_constants())
{
    if (thicknesses_cm.empty())
        throw std::invalid_argument("shield scan needs at least one thickness");
    for (std::size_t i = 0; i < thicknesses_cm.size(); ++i) {
        if (!(thicknesses_cm[i] >= 0) || !std::isfinite(thicknesses_cm[i]))
            throw std::invalid_argument("shield scan thickness "
                                        + std::to_string(i + 1) + " must be >= 0");
        if (i > 0 && !(thicknesses_cm[i] > thicknesses_cm[i - 1]))
            throw std::invalid_argument("shield scan thicknesses must be strictly increasing");
    }

    std::vector<ThicknessPoint> out;
    out.reserve(thicknesses_cm.size());
    for (double t : thicknesses_cm) {
        const ShieldSpec s{shield_table.material, t};
        const auto r = gamma_power(det, s, spectrum, shield_table, detector_table, opts, c);
        out.push_back({t, r.power_W, r.power_err_W});
    }
    return out;
}

} // namespace cslbg
