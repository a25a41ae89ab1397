#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "demandcast/metrics.hpp"
#include "demandcast/synthetic.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace demandcast;

TEST_CASE("direction accuracy counts matched signs over the literal divisor")
{
    CHECK(pocid({1, 2, 1, 2}, {2, 1, 2}) == 75.0);
    CHECK(pocid({1, 2, 1, 2}, {2, 1, 2}, PocidDivisor::NMinus1) == 100.0);

    // A flat step only matches a flat forecast.
    CHECK(pocid({1, 1, 2}, {1, 1}) == doctest::Approx(100.0 / 3.0).epsilon(1e-12));

    // Perfect forecasts still lose the first slot to the divisor.
    std::vector<double> actual{3, 6, 2, 9, 9};
    std::vector<double> predicted(actual.begin() + 1, actual.end());
    CHECK(pocid(actual, predicted) == 100.0 * 4.0 / 5.0);
    CHECK(pocid(actual, predicted, PocidDivisor::NMinus1) == 100.0);

    CHECK_THROWS_AS(pocid({1, 2}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(pocid({1}, {}), std::invalid_argument);
}

TEST_CASE("squared error basics")
{
    CHECK(mse({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(mse({0, 2}, {1, 0}) == 2.5);
    CHECK(mse({10, 12}, {11, 10}) == 2.5); // translation invariance
    CHECK_THROWS_AS(mse({1}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(mse({}, {}), std::invalid_argument);
}

TEST_CASE("percentage error skips zero actuals and reports the skips")
{
    auto [v1, s1] = mape({1, 2, 4}, {2, 1, 2});
    CHECK(*v1 == doctest::Approx(100.0 * (1.0 + 0.5 + 0.5) / 3.0).epsilon(1e-12));
    CHECK(s1 == 0);

    auto [v2, s2] = mape({0, 2}, {5, 2});
    CHECK(*v2 == 0.0);
    CHECK(s2 == 1);

    auto [v3, s3] = mape({0, 0}, {1, 2});
    CHECK_FALSE(v3.has_value());
    CHECK(s3 == 2);

    auto [v4, s4] = mape({3, 4}, {3, 4});
    CHECK(*v4 == 0.0);
    CHECK(s4 == 0);
}

TEST_CASE("error ratio against the last-value reference")
{
    CHECK(*theil_u({1, 2, 4}, {3, 3}) == doctest::Approx(0.4).epsilon(1e-15));
    std::vector<double> actual{3, 6, 2, 9};
    CHECK(*theil_u(actual, {6, 2, 9}) == 0.0);
    CHECK_FALSE(theil_u({5, 5, 5}, {4, 6}).has_value());

    // The last-value forecast itself scores exactly one.
    std::vector<double> naive(actual.begin(), actual.end() - 1);
    CHECK(*theil_u(actual, naive) == 1.0);
}

TEST_CASE("combined report over a fixed window")
{
    std::vector<double> actual{3, 5, 4, 4, 6, 2};
    std::vector<double> predicted{4, 4, 5, 5, 3};
    MetricReport r = compute_metrics(actual, predicted);
    CHECK(r.pocid == doctest::Approx(100.0 * 4.0 / 6.0).epsilon(1e-12));
    CHECK(r.mse == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(*r.mape == doctest::Approx(100.0 * (0.2 + 0.0 + 0.25 + 1.0 / 6.0 + 0.5) / 5.0)
                         .epsilon(1e-12));
    CHECK(r.mape_skipped == 0);
    CHECK(*r.theil_u == doctest::Approx(0.16).epsilon(1e-15));
    CHECK(r.n_effective == 5);
}

TEST_CASE("all four agree with plain-loop references on random windows")
{
    SplitMix64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 5 + rng.next() % 36;
        std::vector<double> actual = testutil::to_doubles(testutil::random_counts(n, 30, rng));
        std::vector<double> predicted;
        for (std::size_t i = 1; i < n; ++i)
            predicted.push_back(static_cast<double>(rng.next() % 31));

        CHECK(pocid(actual, predicted) == doctest::Approx(oracle::pocid_loop(actual, predicted))
                                              .epsilon(1e-12));
        CHECK(pocid(actual, predicted, PocidDivisor::NMinus1)
              == doctest::Approx(oracle::pocid_loop(actual, predicted, true)).epsilon(1e-12));

        std::vector<double> scored(actual.begin() + 1, actual.end());
        CHECK(mse(scored, predicted)
              == doctest::Approx(oracle::mse_loop(scored, predicted)).epsilon(1e-12));

        auto [got, got_skipped] = mape(scored, predicted);
        auto [want, want_skipped] = oracle::mape_loop(scored, predicted);
        CHECK(got.has_value() == want.has_value());
        if (got)
            CHECK(*got == doctest::Approx(*want).epsilon(1e-12));
        CHECK(got_skipped == want_skipped);

        auto u = theil_u(actual, predicted);
        auto u_want = oracle::theil_loop(actual, predicted);
        CHECK(u.has_value() == u_want.has_value());
        if (u)
            CHECK(*u == doctest::Approx(*u_want).epsilon(1e-12));
    }
}
