#pragma once

// Photon mass attenuation tables and the exponential shielding chain:
// shield transmission, detector interaction probability, and the fraction
// of photon energy retained as heat.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslbg/core.hpp"
#include "cslbg/errors.hpp"

namespace cslbg {

struct AttenuationRow {
    double energy_MeV;
    double mu_total_cm2_g; //!< total mass attenuation coefficient
    double mu_en_cm2_g;    //!< mass energy-absorption coefficient
};

//! Tabulated photon coefficients for one material, strictly increasing in energy.
struct AttenuationTable {
    Material material;
    std::vector<AttenuationRow> rows;

    double min_energy_MeV() const { return rows.front().energy_MeV; }
    double max_energy_MeV() const { return rows.back().energy_MeV; }
};

inline void validate(const AttenuationTable& t)
{
    validate(t.material);
    if (t.rows.size() < 2)
        throw validation_error("attenuation table '" + t.material.name
                               + "': need at least 2 rows, got "
                               + std::to_string(t.rows.size()));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        const std::string where = "attenuation table '" + t.material.name + "' row "
                                  + std::to_string(i + 1);
        if (!(r.energy_MeV > 0) || !std::isfinite(r.energy_MeV))
            throw validation_error(where + ": energy must be positive");
        if (!(r.mu_total_cm2_g > 0) || !(r.mu_en_cm2_g > 0))
            throw validation_error(where + ": coefficients must be positive");
        if (r.mu_en_cm2_g > r.mu_total_cm2_g)
            throw validation_error(where + ": mu_en exceeds mu_total");
        if (i > 0 && !(r.energy_MeV > t.rows[i - 1].energy_MeV))
            throw validation_error(where + ": energies must be strictly increasing");
    }
}

enum class CoefficientKind { total, energy_absorption };

//! Interpolate a mass coefficient at the given energy, linear in log-log.
//! Energies equal to a table node return that node's value exactly.
inline double lookup_coefficient(const AttenuationTable& t, double energy_MeV,
                                 CoefficientKind kind)
{
    validate(t);
    if (!(energy_MeV > 0) || !std::isfinite(energy_MeV))
        throw std::domain_error("lookup energy must be positive");
    if (energy_MeV < t.min_energy_MeV() || energy_MeV > t.max_energy_MeV())
        throw std::out_of_range("energy " + std::to_string(energy_MeV)
                                + " MeV outside attenuation table '" + t.material.name
                                + "' range [" + std::to_string(t.min_energy_MeV()) + ", "
                                + std::to_string(t.max_energy_MeV()) + "] MeV");

    const auto pick = [kind](const AttenuationRow& r) {
        return kind == CoefficientKind::total ? r.mu_total_cm2_g : r.mu_en_cm2_g;
    };

    auto hi = std::lower_bound(t.rows.begin(), t.rows.end(), energy_MeV,
                               [](const AttenuationRow& r, double e) {
                                   return r.energy_MeV < e;
                               });
    if (hi->energy_MeV == energy_MeV) return pick(*hi);
    auto lo = hi - 1;

    const double u = (std::log(energy_MeV) - std::log(lo->energy_MeV))
                     / (std::log(hi->energy_MeV) - std::log(lo->energy_MeV));
    return std::exp(std::log(pick(*lo)) + u * (std::log(pick(*hi)) - std::log(pick(*lo))));
}

//! Slab of shielding material.
struct ShieldSpec {
    Material material;
    double thickness_cm = 0;
};

inline void validate(const ShieldSpec& s)
{
    validate(s.material);
    if (!(s.thickness_cm >= 0) || !std::isfinite(s.thickness_cm))
        throw std::domain_error("shield thickness must be finite and >= 0");
}

//! Fraction of photons of the given energy that pass the shield unscattered:
//! s = exp(-(mu/rho) rho l). Multiplicative in thickness.
inline double shield_transmission(const ShieldSpec& shield, const AttenuationTable& table,
                                  double energy_MeV)
{
    validate(shield);
    const double mu = lookup_coefficient(table, energy_MeV, CoefficientKind::total);
    return std::exp(-mu * shield.material.rho_g_cm3 * shield.thickness_cm);
}

//! Path length model through the cubic absorber.
enum class PathModel {
    side,      //!< l = side (slab-like approximation)
    mean_chord //!< l = 2/3 side (isotropic mean chord of a cube, 4V/S)
};

inline double path_length_cm(const DetectorSpec& det, PathModel model)
{
    return model == PathModel::side ? det.side_cm : (2.0 / 3.0) * det.side_cm;
}

//! Probability that a photon interacts at all inside the absorber:
//! p = 1 - exp(-(mu/rho)_tot rho_d l_d).
inline double detector_absorption_fraction(const DetectorSpec& det,
                                           const AttenuationTable& table,
                                           double energy_MeV,
                                           PathModel model = PathModel::side)
{
    validate(det);
    const double mu = lookup_coefficient(table, energy_MeV, CoefficientKind::total);
    return -std::expm1(-mu * det.material.rho_g_cm3 * path_length_cm(det, model));
}

//! Fraction of the photon energy deposited as heat, from the
//! energy-absorption coefficient: 1 - exp(-(mu/rho)_en rho_d l_d).
inline double energy_absorbed_fraction(const DetectorSpec& det,
                                       const AttenuationTable& table,
                                       double energy_MeV,
                                       PathModel model = PathModel::side)
{
    validate(det);
    const double mu = lookup_coefficient(table, energy_MeV, CoefficientKind::energy_absorption);
    return -std::expm1(-mu * det.material.rho_g_cm3 * path_length_cm(det, model));
}

} // namespace cslbg
