#pragma once

// Core types and the spontaneous-collapse (CSL) bulk heating rate.
//
// The heating rate of a rigid body with mass M under the mass-proportional
// CSL model is
//
//     dE/dt = (3/4) lambda hbar^2 / r_c^2 * M / m_N^2
//
// which for the canonical correlation length r_c = 1e-7 m evaluates to
// about 0.3 J/kg per unit collapse rate lambda.

#include <cmath>
#include <stdexcept>
#include <string>

#include "cslbg/constants.hpp"

namespace cslbg {

//! Collapse model parameters.
struct CslParams {
    double lambda_per_s = 1e-16; //!< collapse rate [1/s]
    double r_c_m = 1e-7;         //!< correlation length [m]
};

//! Bulk material for stopping-power and attenuation calculations.
struct Material {
    std::string name;
    double Z = 0;                  //!< atomic number
    double A_g_mol = 0;            //!< molar mass [g/mol]
    double rho_g_cm3 = 0;          //!< density [g/cm^3]
    double mean_excitation_MeV = 0; //!< mean excitation energy I [MeV]
};

//! Mean excitation energy from the I = 10 eV * Z rule.
constexpr double default_mean_excitation_MeV(double Z)
{
    return Z * 1e-5; // 10 eV in MeV
}

namespace materials {

inline Material germanium()
{
    // Density follows the reference arithmetic used throughout (5.67 g/cm^3).
    return {"germanium", 32.0, 72.63, 5.67, default_mean_excitation_MeV(32.0)};
}

inline Material lead()
{
    return {"lead", 82.0, 207.2, 11.35, default_mean_excitation_MeV(82.0)};
}

inline Material standard_rock()
{
    return {"standard_rock", 11.0, 22.0, 2.65, default_mean_excitation_MeV(11.0)};
}

inline Material by_name(const std::string& name)
{
    if (name == "germanium") return germanium();
    if (name == "lead") return lead();
    if (name == "standard_rock") return standard_rock();
    throw std::invalid_argument("unknown material '" + name + "'");
}

} // namespace materials

inline void validate(const Material& m)
{
    if (!(m.Z >= 1) || !std::isfinite(m.Z))
        throw std::domain_error("material '" + m.name + "': Z must be >= 1");
    if (!(m.A_g_mol >= m.Z))
        throw std::domain_error("material '" + m.name + "': A must be >= Z");
    if (!(m.rho_g_cm3 > 0) || !std::isfinite(m.rho_g_cm3))
        throw std::domain_error("material '" + m.name + "': density must be positive");
    if (!(m.mean_excitation_MeV > 0))
        throw std::domain_error("material '" + m.name + "': mean excitation energy must be positive");
}

inline void validate(const CslParams& p)
{
    if (!(p.lambda_per_s >= 0) || !std::isfinite(p.lambda_per_s))
        throw std::domain_error("CSL lambda must be finite and >= 0");
    if (!(p.r_c_m > 0) || !std::isfinite(p.r_c_m))
        throw std::domain_error("CSL r_c must be finite and > 0");
}

//! Cubic absorber.
struct DetectorSpec {
    Material material;
    double side_cm = 10.0;
    double specific_heat_J_kgK = 0; //!< optional, thermal module only

    double volume_cm3() const { return side_cm * side_cm * side_cm; }
    double mass_g() const { return material.rho_g_cm3 * volume_cm3(); }
    double mass_kg() const { return mass_g() * 1e-3; }
};

inline void validate(const DetectorSpec& d)
{
    validate(d.material);
    if (!(d.side_cm > 0) || !std::isfinite(d.side_cm))
        throw std::domain_error("detector side must be finite and > 0");
}

//! Total CSL heating power [W] deposited in a body of the given mass.
//! Exactly linear in lambda and mass; doubling r_c divides the result by 4.
inline double csl_power_W(const CslParams& p, double mass_kg,
                          const Constants& c = paper_constants())
{
    validate(p);
    if (!(mass_kg >= 0) || !std::isfinite(mass_kg))
        throw std::domain_error("mass must be finite and >= 0");
    const double num = 0.75 * p.lambda_per_s * (c.hbar_J_s * c.hbar_J_s) * mass_kg;
    const double den = (p.r_c_m * p.r_c_m) * (c.m_N_kg * c.m_N_kg);
    return num / den;
}

//! CSL heating rate per unit mass [W/kg] (about 0.3 * lambda at r_c = 1e-7 m).
inline double csl_heating_per_mass_W_kg(const CslParams& p,
                                        const Constants& c = paper_constants())
{
    return csl_power_W(p, 1.0, c);
}

} // namespace cslbg
