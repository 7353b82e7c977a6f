#pragma once

// Physical constants used across the library, bundled into switchable
// profiles so published arithmetic can be reproduced exactly.

#include <stdexcept>
#include <string>

namespace cslbg {

struct Constants {
    double hbar_J_s;        //!< reduced Planck constant [J s]
    double m_N_kg;          //!< nucleon (proton) mass [kg]
    double m_e_c2_MeV;      //!< electron rest energy [MeV]
    double m_mu_c2_MeV;     //!< muon rest energy [MeV]
    double r0_cm;           //!< classical electron radius [cm]
    double N_A;             //!< Avogadro constant [1/mol]
    double k_B_J_K;         //!< Boltzmann constant [J/K]
    double MeV_to_J;        //!< energy conversion [J/MeV]
};

//! Profile with rounded legacy values (m_mu = 106 MeV, r0 = 2.82e-13 cm),
//! kept to reproduce published numbers.
constexpr Constants paper_constants()
{
    return {
        1.054571817e-34,
        1.6726e-27,
        0.511,
        106.0,
        2.82e-13,
        6.02214076e23,
        1.380649e-23,
        1.602176634e-13,
    };
}

//! CODATA 2018 values.
constexpr Constants codata_constants()
{
    return {
        1.054571817e-34,
        1.67262192369e-27,
        0.51099895,
        105.6583755,
        2.8179403262e-13,
        6.02214076e23,
        1.380649e-23,
        1.602176634e-13,
    };
}

enum class ConstantProfile { paper, codata };

constexpr Constants constants_for(ConstantProfile p)
{
    return p == ConstantProfile::paper ? paper_constants() : codata_constants();
}

inline ConstantProfile profile_from_name(const std::string& name)
{
    if (name == "paper") return ConstantProfile::paper;
    if (name == "codata") return ConstantProfile::codata;
    throw std::invalid_argument("unknown constants profile '" + name
                                + "' (expected 'paper' or 'codata')");
}

} // namespace cslbg
