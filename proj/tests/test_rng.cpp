#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "cslbg/rng.hpp"

using namespace cslbg;
using Catch::Approx;

TEST_CASE("uniform draws are the documented function of the engine output")
{
    PortableRng rng(12345);
    std::mt19937_64 raw(12345);
    for (int i = 0; i < 100; ++i) {
        const double expected = static_cast<double>(raw() >> 11) * 0x1.0p-53;
        CHECK(rng.uniform() == expected);
    }
}

TEST_CASE("streams are reproducible per seed")
{
    PortableRng a(99), b(99), c(100);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 50; ++i) {
        const double va = a.uniform(), vb = b.uniform(), vc = c.uniform();
        all_equal = all_equal && va == vb;
        any_diff = any_diff || va != vc;
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("exponential inversion has the right mean")
{
    PortableRng rng(7);
    const double rate = 2.5;
    double sum = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) sum += rng.exponential(rate);
    CHECK(sum / n == Approx(1.0 / rate).epsilon(0.01));
    CHECK_THROWS_AS(rng.exponential(0.0), std::domain_error);
}

TEST_CASE("normal pairs have near-standard moments")
{
    PortableRng rng(11);
    double sum = 0, sum2 = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto p = rng.normal_pair();
        sum += p.first + p.second;
        sum2 += p.first * p.first + p.second * p.second;
    }
    CHECK(sum / (2 * n) == Approx(0.0).margin(0.01));
    CHECK(sum2 / (2 * n) == Approx(1.0).epsilon(0.01));
}

TEST_CASE("poisson counts match the distribution at mean 0.1")
{
    // counts over seeds 1..1000 against Poisson(0.1); chi-square with
    // categories {0, 1, >=2} must not reject at the 1% level (9.21 for 2 dof)
    int counts[3] = {0, 0, 0};
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        PortableRng rng(seed);
        const auto n = rng.poisson_count(0.1);
        ++counts[n >= 2 ? 2 : n];
    }
    const double p0 = std::exp(-0.1);
    const double p1 = 0.1 * p0;
    const double expected[3] = {1000 * p0, 1000 * p1, 1000 * (1 - p0 - p1)};
    double chi2 = 0;
    for (int i = 0; i < 3; ++i)
        chi2 += (counts[i] - expected[i]) * (counts[i] - expected[i]) / expected[i];
    INFO("counts " << counts[0] << "/" << counts[1] << "/" << counts[2] << " chi2 " << chi2);
    CHECK(chi2 < 9.21);
}
