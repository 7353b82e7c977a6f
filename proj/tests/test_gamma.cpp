#include <catch_amalgamated.hpp>

#include <cmath>

#include "cslbg/gamma.hpp"
#include "cslbg/fit.hpp"
#include "cslbg/io.hpp"
#include "helpers.hpp"

using namespace cslbg;
using Catch::Approx;

namespace {

struct Bundle {
    AttenuationTable pb;
    AttenuationTable ge;
    GammaSpectrum spectrum;
};

const Bundle& bundle()
{
    static const Bundle b{
        load_attenuation(data_dir() + "/pb_attenuation.csv", materials::lead()),
        load_attenuation(data_dir() + "/ge_attenuation.csv", materials::germanium()),
        load_gamma_spectrum(data_dir() + "/gamma_spectrum_lngs_sample.csv"),
    };
    return b;
}

const DetectorSpec ge_cube{materials::germanium(), 10.0};

} // namespace

TEST_CASE("single-bin power matches the factor chain")
{
    const AttenuationTable shield{materials::lead(),
                                  {{0.5, 0.16, 0.09}, {1.0, 0.071, 0.038}, {2.0, 0.046, 0.026}}};
    const AttenuationTable det{materials::germanium(),
                               {{0.5, 0.094, 0.029}, {1.0, 0.060, 0.025}, {2.0, 0.040, 0.020}}};
    const GammaSpectrum spec{{{0.9, 1.1, 2.0, 0.5}}};
    const ShieldSpec slab{materials::lead(), 3.0};

    const auto r = gamma_power(ge_cube, slab, spec, shield, det);
    const auto c = paper_constants();
    const double s = std::exp(-0.071 * 11.35 * 3.0);
    const double p = -std::expm1(-0.060 * 5.67 * 10.0);
    const double f = -std::expm1(-0.025 * 5.67 * 10.0);
    const double per_flux = 1.0 * 600.0 * s * p * f * c.MeV_to_J;
    CHECK(r.power_W == Approx(2.0 * per_flux).epsilon(1e-12));
    CHECK(r.power_err_W == Approx(0.5 * per_flux).epsilon(1e-12));
    CHECK(r.bins.size() == 1);
    CHECK(r.bins[0].e_mid_MeV == Approx(1.0));
}

TEST_CASE("bin errors combine in quadrature")
{
    const auto& b = bundle();
    const auto r = gamma_power(ge_cube, {materials::lead(), 5.0}, b.spectrum, b.pb, b.ge);
    double sum2 = 0;
    for (const auto& bin : r.bins) sum2 += bin.power_err_W * bin.power_err_W;
    CHECK(r.power_err_W == Approx(std::sqrt(sum2)).epsilon(1e-12));
}

TEST_CASE("power is exactly linear in the bin fluxes")
{
    const auto& b = bundle();
    GammaSpectrum doubled = b.spectrum;
    for (auto& bin : doubled.bins) {
        bin.flux_cm2_s *= 2.0;
        bin.flux_err_cm2_s *= 2.0;
    }
    const auto r1 = gamma_power(ge_cube, {materials::lead(), 2.0}, b.spectrum, b.pb, b.ge);
    const auto r2 = gamma_power(ge_cube, {materials::lead(), 2.0}, doubled, b.pb, b.ge);
    CHECK(r2.power_W == 2.0 * r1.power_W);
    CHECK(r2.power_err_W == 2.0 * r1.power_err_W);
}

TEST_CASE("area conventions differ by the face count")
{
    const auto& b = bundle();
    GammaPowerOptions one_face;
    one_face.area = IncidentArea::single_face;
    const auto all = gamma_power(ge_cube, {materials::lead(), 0.0}, b.spectrum, b.pb, b.ge);
    const auto one = gamma_power(ge_cube, {materials::lead(), 0.0}, b.spectrum, b.pb, b.ge,
                                 one_face);
    CHECK(all.power_W == Approx(6.0 * one.power_W).epsilon(1e-14));
}

TEST_CASE("bundled pipeline frozen values")
{
    const auto& b = bundle();
    const auto p0 = gamma_power(ge_cube, {materials::lead(), 0.0}, b.spectrum, b.pb, b.ge);
    const auto p10 = gamma_power(ge_cube, {materials::lead(), 10.0}, b.spectrum, b.pb, b.ge);
    const auto p20 = gamma_power(ge_cube, {materials::lead(), 20.0}, b.spectrum, b.pb, b.ge);
    CHECK(p0.power_W == Approx(4.4064e-11).epsilon(1e-4));
    CHECK(p10.power_W == Approx(7.1087e-14).epsilon(1e-4));
    CHECK(p20.power_W == Approx(3.9219e-16).epsilon(1e-4));
}

TEST_CASE("shield scan decreases monotonically and fits a clean line")
{
    const auto& b = bundle();
    std::vector<double> thicknesses;
    for (int i = 0; i <= 40; ++i) thicknesses.push_back(0.5 * i);
    const auto scan = shield_scan(ge_cube, b.spectrum, b.pb, b.ge, thicknesses);
    REQUIRE(scan.size() == thicknesses.size());
    for (std::size_t i = 1; i < scan.size(); ++i)
        CHECK(scan[i].power_W < scan[i - 1].power_W);

    std::vector<double> x, y, err;
    for (const auto& p : scan) {
        x.push_back(p.thickness_cm);
        y.push_back(p.power_W);
        err.push_back(p.power_err_W);
    }
    const auto fit = weighted_log_linear_fit(x, y, err);
    CHECK(fit.slope == Approx(-0.2480).margin(2e-4));
    CHECK(fit.intercept == Approx(-10.6059).margin(2e-3));
    CHECK(fit.r_squared == Approx(0.99534).margin(2e-4));
}

TEST_CASE("scan input validation")
{
    const auto& b = bundle();
    CHECK_THROWS_AS(shield_scan(ge_cube, b.spectrum, b.pb, b.ge, {}), std::invalid_argument);
    CHECK_THROWS_AS(shield_scan(ge_cube, b.spectrum, b.pb, b.ge, {1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(shield_scan(ge_cube, b.spectrum, b.pb, b.ge, {-1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("spectrum validation names the offending bin")
{
    GammaSpectrum overlap{{{0.1, 0.5, 1.0, 0.1}, {0.4, 0.8, 1.0, 0.1}}};
    CHECK_THROWS_WITH(validate(overlap), Catch::Matchers::ContainsSubstring("bin 2"));

    GammaSpectrum inverted{{{0.5, 0.1, 1.0, 0.1}}};
    CHECK_THROWS_AS(validate(inverted), validation_error);

    const auto& b = bundle();
    CHECK_THROWS_AS(gamma_power(ge_cube, {materials::lead(), 1.0}, GammaSpectrum{}, b.pb, b.ge),
                    std::domain_error);

    GammaSpectrum below{{{0.01, 0.05, 1.0, 0.1}}};
    CHECK_THROWS_WITH(gamma_power(ge_cube, {materials::lead(), 1.0}, below, b.pb, b.ge),
                      Catch::Matchers::ContainsSubstring("bin 1"));
}

TEST_CASE("piecewise fitted mode stays close to the direct sum")
{
    const auto& b = bundle();
    GammaPowerOptions opts;
    opts.piecewise_fit = true;
    const auto direct = gamma_power(ge_cube, {materials::lead(), 0.0}, b.spectrum, b.pb, b.ge);
    const auto fitted = gamma_power(ge_cube, {materials::lead(), 0.0}, b.spectrum, b.pb, b.ge,
                                    opts);
    CHECK(fitted.power_W > 0);
    CHECK(fitted.power_W / direct.power_W > 1.0 / 3.0);
    CHECK(fitted.power_W / direct.power_W < 3.0);
}
