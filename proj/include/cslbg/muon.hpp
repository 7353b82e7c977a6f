#pragma once

// Cosmic-muon background: Bethe-Bloch stopping power, angular flux
// integrals under the sea-level cos^2(theta) law, underground event rates,
// mean muon energy vs depth, and the deposited muon power.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslbg/core.hpp"
#include "cslbg/errors.hpp"

namespace cslbg {

//! Muon kinematic state derived from the kinetic energy.
struct MuonState {
    double kinetic_energy_MeV;
    double total_energy_MeV;
    double p_c_MeV; //!< momentum times c
    double beta;
};

inline MuonState muon_from_kinetic(double T_MeV, const Constants& c = paper_constants())
{
    if (!(T_MeV > 0) || !std::isfinite(T_MeV))
        throw std::domain_error("muon kinetic energy must be finite and > 0");
    const double m = c.m_mu_c2_MeV;
    const double E = T_MeV + m;
    const double pc = std::sqrt(E * E - m * m);
    return {T_MeV, E, pc, pc / E};
}

//! Maximum energy transferable to an atomic electron in a single collision:
//! E'_m = 2 m_e c^2 p^2 c^2 / (m_e^2 c^4 + m_mu^2 c^4 + 2 m_e c^2 E_total).
inline double max_transferable_energy_MeV(const MuonState& mu,
                                          const Constants& c = paper_constants())
{
    const double me = c.m_e_c2_MeV;
    const double mmu = c.m_mu_c2_MeV;
    const double pc2 = mu.p_c_MeV * mu.p_c_MeV;
    return 2.0 * me * pc2 / (me * me + mmu * mmu + 2.0 * me * mu.total_energy_MeV);
}

//! Bethe-Bloch mean ionization loss per areal density [MeV cm^2/g], with no
//! density-effect or shell corrections:
//!   dE/d(rho x) = (2 C m_e c^2 / beta^2) [ln(2 m_e c^2 E'_m beta^2 /
//!                 ((1 - beta^2) I^2)) - 2 beta^2],  C = pi r0^2 N_A Z / A.
//! Valid for relativistic muons; the unsuppressed relativistic rise means
//! the result keeps growing past the ionization minimum near 0.25 GeV.
inline double stopping_power_MeV_cm2_g(const MuonState& mu, const Material& mat,
                                       const Constants& c = paper_constants())
{
    validate(mat);
    const double me = c.m_e_c2_MeV;
    const double beta2 = mu.beta * mu.beta;
    const double one_minus_beta2 = 1.0 - beta2;
    const double I = mat.mean_excitation_MeV;
    const double arg = 2.0 * me * max_transferable_energy_MeV(mu, c) * beta2
                       / (one_minus_beta2 * I * I);
    if (!(arg > 1.0))
        throw std::domain_error(
            "Bethe-Bloch logarithm argument <= 1 at T = " + std::to_string(mu.kinetic_energy_MeV)
            + " MeV in " + mat.name
            + "; the formula needs a relativistic muon (T above roughly 1 MeV)");
    const double C = std::numbers::pi * c.r0_cm * c.r0_cm * c.N_A * mat.Z / mat.A_g_mol;
    return (2.0 * C * me / beta2) * (std::log(arg) - 2.0 * beta2);
}

// --- angular flux integrals for I(theta) = I_v cos^2(theta) ---

//! Flux through a horizontal unit area: J1 = (pi/2) I_v.
inline double horizontal_flux(double I_v)
{
    return (std::numbers::pi / 2.0) * I_v;
}

//! Flux through a unit area tilted by theta_a from the horizontal:
//! J = (pi/2) I_v (cos(theta_a) + (pi/4) sin(theta_a)).
inline double tilted_flux(double I_v, double theta_a_rad)
{
    return (std::numbers::pi / 2.0) * I_v
           * (std::cos(theta_a_rad) + (std::numbers::pi / 4.0) * std::sin(theta_a_rad));
}

//! Flux through a vertical unit area: J3 = (pi^2/8) I_v, the theta_a = pi/2
//! value of tilted_flux. Note this is the tilted-plane convention used by
//! the event-rate accounting; the exact solid-angle integral for a vertical
//! plane is smaller (see estimate_cube_chord for the exact-geometry rate).
inline double vertical_flux(double I_v)
{
    return (std::numbers::pi * std::numbers::pi / 8.0) * I_v;
}

//! Which cube faces collect flux when converting intensity to an event rate.
enum class FaceConvention {
    top_plus_sides, //!< top face horizontal + 4 lateral faces vertical (default)
    all_faces,      //!< adds the bottom face as a second horizontal collector
    top_only        //!< single horizontal face
};

inline FaceConvention face_convention_from_name(const std::string& name)
{
    if (name == "top+sides") return FaceConvention::top_plus_sides;
    if (name == "all") return FaceConvention::all_faces;
    if (name == "top") return FaceConvention::top_only;
    throw std::invalid_argument("unknown face convention '" + name
                                + "' (expected 'top+sides', 'all' or 'top')");
}

struct RateResult {
    double rate_per_s;
    double rate_err_per_s;
};

//! Muons crossing the cube per second: J1 * (horizontal area) + J3 *
//! (vertical area). Exactly linear in I_v; the error propagates linearly.
inline RateResult event_rate(const DetectorSpec& det, double I_v, double I_v_err = 0,
                             FaceConvention faces = FaceConvention::top_plus_sides)
{
    validate(det);
    if (!(I_v >= 0) || !std::isfinite(I_v))
        throw std::domain_error("vertical intensity must be finite and >= 0");
    if (!(I_v_err >= 0) || !std::isfinite(I_v_err))
        throw std::domain_error("vertical intensity error must be finite and >= 0");
    const double face = det.side_cm * det.side_cm;
    double horizontal = 0, vertical = 0;
    switch (faces) {
        case FaceConvention::top_plus_sides: horizontal = face; vertical = 4.0 * face; break;
        case FaceConvention::all_faces: horizontal = 2.0 * face; vertical = 4.0 * face; break;
        case FaceConvention::top_only: horizontal = face; vertical = 0.0; break;
    }
    const double per_iv = (std::numbers::pi / 2.0) * horizontal
                          + (std::numbers::pi * std::numbers::pi / 8.0) * vertical;
    return {I_v * per_iv, I_v_err * per_iv};
}

//! Parameters of the mean-energy depth profile
//! <E> = epsilon (1 - exp(-b d)) / (gamma - 2).
struct MeanEnergyParams {
    double b_per_kmwe;
    double gamma_mu;
    double epsilon_mu_GeV;
    std::string source_label;
};

inline void validate(const MeanEnergyParams& p)
{
    if (!(p.b_per_kmwe > 0))
        throw std::domain_error("mean-energy parameter b must be > 0");
    if (!(p.gamma_mu > 2))
        throw std::domain_error("mean-energy parameter gamma must be > 2");
    if (!(p.epsilon_mu_GeV > 0))
        throw std::domain_error("mean-energy parameter epsilon must be > 0");
}

namespace mean_energy {

//! b = 0.383 /km.w.e, gamma = 3.7, epsilon = 618 GeV.
inline MeanEnergyParams set_618()
{
    return {0.383, 3.7, 618.0, "b=0.383/kmwe gamma=3.7 eps=618GeV"};
}

//! b = 0.4 /km.w.e, gamma = 3.77, epsilon = 693 GeV.
inline MeanEnergyParams set_693()
{
    return {0.4, 3.77, 693.0, "b=0.4/kmwe gamma=3.77 eps=693GeV"};
}

} // namespace mean_energy

//! Mean muon energy [GeV] at the given depth; strictly increasing in depth
//! and bounded by epsilon / (gamma - 2).
inline double mean_muon_energy_GeV(double depth_kmwe, const MeanEnergyParams& p)
{
    validate(p);
    if (!(depth_kmwe >= 0) || !std::isfinite(depth_kmwe))
        throw std::domain_error("depth must be finite and >= 0");
    return p.epsilon_mu_GeV * (-std::expm1(-p.b_per_kmwe * depth_kmwe)) / (p.gamma_mu - 2.0);
}

struct DepthRow {
    double depth_kmwe;
    double intensity_cm2_s_sr;
    double intensity_err;
};

//! Vertical muon intensity vs depth; strictly decreasing intensity.
struct DepthIntensityTable {
    std::string site;
    std::vector<DepthRow> rows;

    double min_depth_kmwe() const { return rows.front().depth_kmwe; }
    double max_depth_kmwe() const { return rows.back().depth_kmwe; }
};

inline void validate(const DepthIntensityTable& t)
{
    if (t.rows.size() < 2)
        throw validation_error("depth-intensity table '" + t.site
                               + "': need at least 2 rows, got " + std::to_string(t.rows.size()));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        const std::string where = "depth-intensity table '" + t.site + "' row "
                                  + std::to_string(i + 1);
        if (!std::isfinite(r.depth_kmwe))
            throw validation_error(where + ": depth must be finite");
        if (!(r.intensity_cm2_s_sr > 0) || !std::isfinite(r.intensity_cm2_s_sr))
            throw validation_error(where + ": intensity must be finite and > 0");
        if (!(r.intensity_err >= 0) || !std::isfinite(r.intensity_err))
            throw validation_error(where + ": intensity error must be finite and >= 0");
        if (i > 0) {
            if (!(r.depth_kmwe > t.rows[i - 1].depth_kmwe))
                throw validation_error(where + ": depths must be strictly increasing (rows "
                                       + std::to_string(i) + " and " + std::to_string(i + 1) + ")");
            if (!(r.intensity_cm2_s_sr < t.rows[i - 1].intensity_cm2_s_sr))
                throw validation_error(where + ": intensity must be strictly decreasing (rows "
                                       + std::to_string(i) + " and " + std::to_string(i + 1) + ")");
        }
    }
}

struct IntensityAtDepth {
    double intensity_cm2_s_sr;
    double intensity_err;
};

//! Interpolate the table at the given depth, linear in (depth, log10 I_v);
//! the relative error is interpolated linearly in depth.
inline IntensityAtDepth interpolate_intensity(const DepthIntensityTable& t, double depth_kmwe)
{
    validate(t);
    if (!(depth_kmwe >= t.min_depth_kmwe()) || !(depth_kmwe <= t.max_depth_kmwe()))
        throw std::out_of_range("depth " + std::to_string(depth_kmwe)
                                + " km.w.e outside table '" + t.site + "' range ["
                                + std::to_string(t.min_depth_kmwe()) + ", "
                                + std::to_string(t.max_depth_kmwe()) + "]");
    auto hi = std::lower_bound(t.rows.begin(), t.rows.end(), depth_kmwe,
                               [](const DepthRow& r, double d) { return r.depth_kmwe < d; });
    if (hi->depth_kmwe == depth_kmwe)
        return {hi->intensity_cm2_s_sr, hi->intensity_err};
    auto lo = hi - 1;
    const double u = (depth_kmwe - lo->depth_kmwe) / (hi->depth_kmwe - lo->depth_kmwe);
    const double log_iv = std::log10(lo->intensity_cm2_s_sr)
                          + u * (std::log10(hi->intensity_cm2_s_sr)
                                 - std::log10(lo->intensity_cm2_s_sr));
    const double iv = std::pow(10.0, log_iv);
    const double rel_lo = lo->intensity_err / lo->intensity_cm2_s_sr;
    const double rel_hi = hi->intensity_err / hi->intensity_cm2_s_sr;
    const double rel = rel_lo + u * (rel_hi - rel_lo);
    return {iv, iv * rel};
}

//! Fractional uncertainty assumed on each MeanEnergyParams entry.
inline constexpr double mean_energy_param_rel_err = 0.04;

struct MuonPowerResult {
    double power_W;
    double power_err_W;
    double event_rate_per_s;
    double event_rate_err_per_s;
    double mean_energy_GeV;
    double stopping_MeV_cm2_g;
};

namespace detail {

//! Propagate the blanket 4% parameter uncertainty to the mean energy
//! (quadrature over the three parameters).
inline double mean_energy_err_GeV(double depth_kmwe, const MeanEnergyParams& p)
{
    const double e0 = mean_muon_energy_GeV(depth_kmwe, p);
    auto shifted = [&](MeanEnergyParams q) { return mean_muon_energy_GeV(depth_kmwe, q) - e0; };
    MeanEnergyParams pb = p, pg = p, pe = p;
    pb.b_per_kmwe *= 1.0 + mean_energy_param_rel_err;
    pg.gamma_mu *= 1.0 + mean_energy_param_rel_err;
    pe.epsilon_mu_GeV *= 1.0 + mean_energy_param_rel_err;
    const double db = shifted(pb), dg = shifted(pg), de = shifted(pe);
    return std::sqrt(db * db + dg * dg + de * de);
}

} // namespace detail

//! Muon power deposited in the cube for a given vertical intensity and mean
//! energy: P = S(<E>) * rate * rho * l with l = side. The error band
//! combines the intensity error and the 4% mean-energy parameter error in
//! quadrature (on log10 P, equivalently on the relative error).
inline MuonPowerResult muon_power_at(const DetectorSpec& det, double I_v, double I_v_err,
                                     double mean_energy_GeV,
                                     double mean_energy_err_GeV = 0,
                                     FaceConvention faces = FaceConvention::top_plus_sides,
                                     const Constants& c = paper_constants())
{
    validate(det);
    const auto rate = event_rate(det, I_v, I_v_err, faces);
    if (I_v == 0)
        return {0, 0, 0, 0, mean_energy_GeV, 0};

    const auto mu = muon_from_kinetic(mean_energy_GeV * 1e3, c);
    const double S = stopping_power_MeV_cm2_g(mu, det.material, c);
    const double energy_per_event_J = S * det.material.rho_g_cm3 * det.side_cm * c.MeV_to_J;
    const double P = energy_per_event_J * rate.rate_per_s;

    double rel2 = 0;
    if (I_v > 0) rel2 += (I_v_err / I_v) * (I_v_err / I_v);
    if (mean_energy_err_GeV > 0) {
        const auto mu_hi = muon_from_kinetic((mean_energy_GeV + mean_energy_err_GeV) * 1e3, c);
        const auto mu_lo = muon_from_kinetic(
            std::max(mean_energy_GeV - mean_energy_err_GeV, mean_energy_GeV * 0.5) * 1e3, c);
        const double dS = 0.5
                          * std::abs(stopping_power_MeV_cm2_g(mu_hi, det.material, c)
                                     - stopping_power_MeV_cm2_g(mu_lo, det.material, c));
        rel2 += (dS / S) * (dS / S);
    }
    return {P, P * std::sqrt(rel2), rate.rate_per_s, rate.rate_err_per_s, mean_energy_GeV, S};
}

//! Muon power at a depth covered by the intensity table.
inline MuonPowerResult muon_power(const DetectorSpec& det, double depth_kmwe,
                                  const DepthIntensityTable& table,
                                  const MeanEnergyParams& params,
                                  FaceConvention faces = FaceConvention::top_plus_sides,
                                  const Constants& c = paper_constants())
{
    const auto iv = interpolate_intensity(table, depth_kmwe);
    const double e = mean_muon_energy_GeV(depth_kmwe, params);
    const double e_err = detail::mean_energy_err_GeV(depth_kmwe, params);
    return muon_power_at(det, iv.intensity_cm2_s_sr, iv.intensity_err, e, e_err, faces, c);
}

//! Sea-level vertical muon intensity [1/cm^2/s/sr] and mean energy [GeV].
inline constexpr double surface_vertical_intensity = 1.14e-2;
inline constexpr double surface_mean_energy_GeV = 4.0;

//! Muon power for the cube standing on the surface (sea-level intensity and
//! 4 GeV mean energy).
inline MuonPowerResult surface_muon_power(const DetectorSpec& det,
                                          FaceConvention faces = FaceConvention::top_plus_sides,
                                          const Constants& c = paper_constants())
{
    return muon_power_at(det, surface_vertical_intensity, 0.0, surface_mean_energy_GeV, 0.0,
                         faces, c);
}

// --- optional Monte Carlo chord refinement ---

//! Monte Carlo estimate of the event rate and mean path length for a cube in
//! a cos^2(theta) downward flux. Directions are sampled from the
//! solid-angle-weighted zenith distribution (cos theta = (1-u)^(1/3), phi
//! uniform); for each direction the cube presents projected area
//! A_perp = l^2 (cos theta + sin theta (|cos phi| + |sin phi|)) and the mean
//! chord along that direction is V / A_perp. Deterministic per seed.
//!
//! This is the exact-geometry cross-check: the rate converges to
//! pi * I_v * l^2, below the face-accounting value from event_rate, and the
//! mean chord converges to 2l/3.
struct ChordEstimate {
    double mean_chord_cm;       //!< flux-weighted mean path through the cube
    double rate_per_intensity;  //!< events/s per unit I_v [cm^2 sr]
    double top_fraction;        //!< share of entries through the top face
    double side_fraction;       //!< share of entries through the lateral faces
    std::uint64_t samples;
    std::uint64_t seed;
};

inline ChordEstimate estimate_cube_chord(double side_cm, std::uint64_t seed,
                                         std::uint64_t n_samples = 200000)
{
    if (!(side_cm > 0) || !std::isfinite(side_cm))
        throw std::domain_error("cube side must be finite and > 0");
    if (n_samples == 0)
        throw std::invalid_argument("chord estimate needs at least one sample");

    std::mt19937_64 gen(seed);
    auto unit = [&gen]() { return (gen() >> 11) * 0x1.0p-53; };

    const double l2 = side_cm * side_cm;
    double sum_cos = 0, sum_lat = 0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const double cos_t = std::cbrt(1.0 - unit());
        const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
        const double phi = 2.0 * std::numbers::pi * unit();
        sum_cos += cos_t;
        sum_lat += sin_t * (std::abs(std::cos(phi)) + std::abs(std::sin(phi)));
    }
    const double mean_aperp = l2 * (sum_cos + sum_lat) / static_cast<double>(n_samples);
    // directions are distributed as cos^2(theta) sin(theta), whose integral
    // over the upper hemisphere is 2 pi / 3
    const double norm = 2.0 * std::numbers::pi / 3.0;
    return {side_cm * l2 / mean_aperp, norm * mean_aperp,
            sum_cos / (sum_cos + sum_lat), sum_lat / (sum_cos + sum_lat),
            n_samples, seed};
}

} // namespace cslbg
