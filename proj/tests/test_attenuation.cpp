#include <catch_amalgamated.hpp>

#include <cmath>

#include "cslbg/attenuation.hpp"
#include "cslbg/io.hpp"
#include "helpers.hpp"

using namespace cslbg;
using Catch::Approx;

namespace {

AttenuationTable tiny_table()
{
    return {materials::lead(), {{1.0, 2.0, 1.0}, {2.0, 1.0, 0.5}, {4.0, 0.5, 0.25}}};
}

} // namespace

TEST_CASE("coefficient lookup")
{
    const auto t = tiny_table();
    CHECK(lookup_coefficient(t, 2.0, CoefficientKind::total) == 1.0);
    CHECK(lookup_coefficient(t, 4.0, CoefficientKind::energy_absorption) == 0.25);

    // log-log interpolation: at the geometric mean of the node energies the
    // value is the geometric mean of the node values
    const double mid = std::sqrt(2.0);
    CHECK(lookup_coefficient(t, mid, CoefficientKind::total)
          == Approx(std::sqrt(2.0 * 1.0)).epsilon(1e-12));
    CHECK(lookup_coefficient(t, std::sqrt(8.0), CoefficientKind::total)
          == Approx(std::sqrt(0.5)).epsilon(1e-12));

    CHECK_THROWS_AS(lookup_coefficient(t, 0.5, CoefficientKind::total), std::out_of_range);
    CHECK_THROWS_AS(lookup_coefficient(t, 5.0, CoefficientKind::total), std::out_of_range);
    CHECK_THROWS_WITH(lookup_coefficient(t, 5.0, CoefficientKind::total),
                      Catch::Matchers::ContainsSubstring("range"));
}

TEST_CASE("table validation")
{
    auto bad_order = tiny_table();
    std::swap(bad_order.rows[0], bad_order.rows[1]);
    CHECK_THROWS_AS(validate(bad_order), validation_error);

    auto bad_en = tiny_table();
    bad_en.rows[1].mu_en_cm2_g = 3.0; // exceeds mu_total
    CHECK_THROWS_WITH(validate(bad_en), Catch::Matchers::ContainsSubstring("row 2"));

    AttenuationTable short_table{materials::lead(), {{1.0, 2.0, 1.0}}};
    CHECK_THROWS_AS(validate(short_table), validation_error);

    auto bad_value = tiny_table();
    bad_value.rows[2].mu_total_cm2_g = -0.5;
    CHECK_THROWS_AS(validate(bad_value), validation_error);
}

TEST_CASE("shield transmission composes exponentially")
{
    const auto pb = load_attenuation(data_dir() + "/pb_attenuation.csv", materials::lead());
    for (double e : {0.15, 0.66, 1.33, 2.6}) {
        for (double t1 : {0.5, 2.0}) {
            for (double t2 : {1.0, 7.5}) {
                const double a = shield_transmission({pb.material, t1}, pb, e);
                const double b = shield_transmission({pb.material, t2}, pb, e);
                const double ab = shield_transmission({pb.material, t1 + t2}, pb, e);
                CHECK(ab == Approx(a * b).epsilon(1e-12));
            }
        }
    }
    CHECK(shield_transmission({pb.material, 0.0}, pb, 1.0) == 1.0);
}

TEST_CASE("absorbed fraction never exceeds interaction fraction")
{
    const auto ge = load_attenuation(data_dir() + "/ge_attenuation.csv",
                                     materials::germanium());
    const DetectorSpec det{materials::germanium(), 10.0};
    for (double e = 0.11; e < 2.95; e += 0.07) {
        const double p = detector_absorption_fraction(det, ge, e);
        const double f = energy_absorbed_fraction(det, ge, e);
        CHECK(f <= p);
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("path length models")
{
    const DetectorSpec det{materials::germanium(), 10.0};
    CHECK(path_length_cm(det, PathModel::side) == 10.0);
    CHECK(path_length_cm(det, PathModel::mean_chord) == Approx(20.0 / 3.0));
}
