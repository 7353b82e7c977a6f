#include <catch_amalgamated.hpp>

#include "cslbg/core.hpp"

using namespace cslbg;
using Catch::Approx;

TEST_CASE("constant profiles")
{
    const auto paper = paper_constants();
    const auto codata = codata_constants();
    CHECK(paper.m_mu_c2_MeV == 106.0);
    CHECK(codata.m_mu_c2_MeV == Approx(105.6583755));
    CHECK(paper.m_N_kg == Approx(1.6726e-27));
    CHECK(constants_for(ConstantProfile::paper).m_mu_c2_MeV == paper.m_mu_c2_MeV);
    CHECK(profile_from_name("codata") == ConstantProfile::codata);
    CHECK_THROWS_AS(profile_from_name("2018"), std::invalid_argument);
}

TEST_CASE("collapse heating coefficient at the canonical correlation length")
{
    // frozen: 0.75 * hbar^2 / (r_c^2 m_N^2) with the rounded nucleon mass
    const double per_lambda = csl_heating_per_mass_W_kg({1.0, 1e-7});
    CHECK(per_lambda == Approx(0.298146).epsilon(2e-6));
    CHECK(per_lambda > 0.29);
    CHECK(per_lambda < 0.33);
}

TEST_CASE("collapse power scalings are exact")
{
    const DetectorSpec det{materials::germanium(), 10.0};
    const double base = csl_power_W({1e-16, 1e-7}, det.mass_kg());

    // powers of two commute with rounding, so these hold bitwise
    CHECK(csl_power_W({2e-16, 1e-7}, det.mass_kg()) == 2.0 * base);
    CHECK(csl_power_W({1e-16, 2e-7}, det.mass_kg()) == 0.25 * base);
    CHECK(csl_power_W({1e-16, 1e-7}, 2.0 * det.mass_kg()) == 2.0 * base);
    CHECK(csl_power_W({0.0, 1e-7}, det.mass_kg()) == 0.0);
}

TEST_CASE("materials")
{
    const auto ge = materials::germanium();
    CHECK(ge.Z == 32.0);
    CHECK(ge.rho_g_cm3 == Approx(5.67));
    CHECK(ge.mean_excitation_MeV == Approx(32e-5));
    CHECK(materials::by_name("lead").Z == 82.0);
    CHECK(materials::by_name("standard_rock").A_g_mol == Approx(22.0));
    CHECK_THROWS_AS(materials::by_name("unobtainium"), std::invalid_argument);

    const DetectorSpec det{ge, 10.0};
    CHECK(det.volume_cm3() == Approx(1000.0));
    CHECK(det.mass_kg() == Approx(5.67));
}

TEST_CASE("validation rejects bad inputs")
{
    Material m = materials::germanium();
    m.Z = 0;
    CHECK_THROWS_AS(validate(m), std::domain_error);

    Material neg = materials::germanium();
    neg.rho_g_cm3 = -1;
    CHECK_THROWS_AS(validate(neg), std::domain_error);

    CHECK_THROWS_AS(validate(DetectorSpec{materials::germanium(), -5.0}), std::domain_error);
    CHECK_THROWS_AS(validate(CslParams{-1e-16, 1e-7}), std::domain_error);
    CHECK_THROWS_AS(validate(CslParams{1e-16, 0.0}), std::domain_error);
    CHECK_THROWS_AS(csl_power_W({1e-16, 1e-7}, -1.0), std::domain_error);
}
