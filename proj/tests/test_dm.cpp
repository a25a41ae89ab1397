#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "demandcast/dm.hpp"
#include "demandcast/stats.hpp"
#include "demandcast/synthetic.hpp"
#include "helpers.hpp"

using namespace demandcast;

TEST_CASE("normal distribution helpers match frozen high-precision values")
{
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(2.0 * (1.0 - normal_cdf(1.96)) == doctest::Approx(0.04999579029644087).epsilon(1e-12));
    CHECK(2.0 * (1.0 - normal_cdf(2.0))
          == doctest::Approx(0.045500263896358438).epsilon(1e-12));
    CHECK(2.0 * (1.0 - normal_cdf(3.0))
          == doctest::Approx(0.0026997960632601913).epsilon(1e-12));

    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(normal_cdf(1.3)) == doctest::Approx(1.3).epsilon(1e-10));
    CHECK(normal_cdf(normal_quantile(0.8)) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("worked comparison with a known statistic")
{
    DmResult r = dm_statistic({0, 1, 0, 1}, {1, 1, 1, 1});
    CHECK(r.n == 4);
    CHECK(r.mean_d == -0.5);
    CHECK(r.variance_d == 0.25);
    CHECK(*r.statistic == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(*r.p_value == doctest::Approx(0.045500263896358438).epsilon(1e-12));
    CHECK(std::fabs(*r.p_value - 0.0455) < 1e-3);
    CHECK(r.verdict == DmVerdict::AWins);
    CHECK(dm_favored(r) == -1);

    // The same data under the sample-variance divisor.
    DmResult s = dm_statistic({0, 1, 0, 1}, {1, 1, 1, 1}, 0.05, DmVariance::Sample);
    CHECK(s.variance_d == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(*s.statistic == doctest::Approx(-0.5 / std::sqrt(1.0 / 12.0)).epsilon(1e-12));
}

TEST_CASE("identical losses tie, constant nonzero gaps are degenerate")
{
    DmResult tie = dm_statistic({0.5, -1, 2}, {0.5, -1, 2});
    CHECK(tie.verdict == DmVerdict::Tie);
    CHECK_FALSE(tie.statistic.has_value());
    CHECK(dm_favored(tie) == 0);

    DmResult tie_signs = dm_statistic({1, -2, 3}, {-1, 2, -3});
    CHECK(tie_signs.verdict == DmVerdict::Tie); // squared losses coincide

    DmResult degen = dm_statistic({1, 1, 1, 1}, {2, 2, 2, 2});
    CHECK(degen.verdict == DmVerdict::Degenerate);
    CHECK(degen.mean_d == -3.0);
    CHECK(degen.variance_d == 0.0);
    CHECK_FALSE(degen.statistic.has_value());
    CHECK(dm_favored(degen) == -1);
    CHECK(dm_favored(dm_statistic({2, 2, 2, 2}, {1, 1, 1, 1})) == 1);
}

TEST_CASE("zero mean differential is inconclusive with p equal to one")
{
    DmResult r = dm_statistic({1, 0}, {0, 1});
    CHECK(*r.statistic == 0.0);
    CHECK(*r.p_value == 1.0);
    CHECK(r.verdict == DmVerdict::Inconclusive);
}

TEST_CASE("swapping the models negates the statistic exactly")
{
    SplitMix64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + rng.next() % 30;
        std::vector<double> a(n);
        std::vector<double> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = 10.0 * (rng.next_double() - 0.5);
            b[i] = 10.0 * (rng.next_double() - 0.5);
        }
        DmResult ab = dm_statistic(a, b);
        DmResult ba = dm_statistic(b, a);
        CHECK(ab.mean_d == -ba.mean_d);
        CHECK(ab.variance_d == ba.variance_d);
        if (ab.statistic) {
            CHECK(*ab.statistic == -*ba.statistic);
            CHECK(*ab.p_value == *ba.p_value);
        }
    }
}

TEST_CASE("rescaling both error sequences by a power of two changes nothing")
{
    std::vector<double> a{0.5, 1.25, -0.75, 2.0, 0.0};
    std::vector<double> b{1.0, -1.5, 0.25, 1.75, 0.5};
    DmResult plain = dm_statistic(a, b);
    for (double& v : a)
        v *= 4.0;
    for (double& v : b)
        v *= 4.0;
    DmResult scaled = dm_statistic(a, b);
    CHECK(*plain.statistic == *scaled.statistic);
    CHECK(*plain.p_value == *scaled.p_value);
}

TEST_CASE("input validation")
{
    CHECK_THROWS_AS(dm_statistic({1, 2}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(dm_statistic({1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(dm_statistic({1, 2}, {1, 2}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(dm_statistic({1, 2}, {1, 2}, 1.0), std::invalid_argument);
}

namespace {

struct Scenario {
    std::map<std::string, MetricReport> reports;
    std::map<std::pair<std::string, std::string>, DmResult> matrix;

    void add(const std::string& id, double pocid_value)
    {
        MetricReport r;
        r.pocid = pocid_value;
        reports[id] = r;
    }

    void compare(const std::string& a, const std::string& b, const std::vector<double>& ea,
                 const std::vector<double>& eb)
    {
        matrix[{a, b}] = dm_statistic(ea, eb);
    }
};

const std::vector<double> kSmall{0.1, -0.1, 0.1, -0.1, 0.1, -0.1, 0.1, -0.1};
const std::vector<double> kBig{3.0, -3.0, 3.1, -2.9, 3.0, -3.0, 2.9, -3.1};
const std::vector<double> kMid{1.0, -1.1, 0.9, -1.0, 1.1, -0.9, 1.0, -1.0};

} // namespace

TEST_CASE("decision: the leader keeps the win when the test backs it")
{
    Scenario s;
    s.add("proposed", 80.0);
    s.add("naive", 60.0);
    s.add("ar", 50.0);
    s.compare("proposed", "naive", kSmall, kBig);
    s.compare("proposed", "ar", kSmall, kMid);
    s.compare("ar", "naive", kMid, kBig);

    ModelDecision d = best_model_per_series(s.reports, s.matrix, "proposed");
    CHECK(d.best_model == "proposed");
    CHECK(d.result == "proposed_wins");
    CHECK(d.source == "statistical");
    CHECK(d.competitor == "naive");
    CHECK(*d.dm_statistic < 0.0); // negative favors the proposed side
}

TEST_CASE("decision: no significant difference falls back to the proposed model")
{
    Scenario s;
    s.add("proposed", 55.0);
    s.add("naive", 70.0);
    std::vector<double> nearly = kMid;
    nearly[0] += 0.01;
    s.compare("proposed", "naive", kMid, nearly);

    ModelDecision d = best_model_per_series(s.reports, s.matrix, "proposed");
    CHECK(d.best_model == "proposed");
    CHECK(d.result == "proposed_wins");
    CHECK(d.source == "fallback");
    CHECK(d.competitor == "naive");
}

TEST_CASE("decision: another model can win outright")
{
    Scenario s;
    s.add("proposed", 60.0);
    s.add("naive", 90.0);
    s.add("ar", 50.0);
    s.compare("proposed", "naive", kBig, kSmall);
    s.compare("proposed", "ar", kBig, kMid);
    s.compare("ar", "naive", kMid, kSmall);

    ModelDecision d = best_model_per_series(s.reports, s.matrix, "proposed");
    CHECK(d.best_model == "naive");
    CHECK(d.result == "naive_wins");
    CHECK(d.source == "statistical");
    CHECK(d.competitor == "naive");
    CHECK(*d.dm_statistic > 0.0); // the proposed side lost this comparison
}

TEST_CASE("decision: a leader that loses the loss comparison forfeits to the fallback")
{
    Scenario s;
    // naive leads on direction but is significantly worse on squared error.
    s.add("proposed", 60.0);
    s.add("naive", 90.0);
    s.compare("proposed", "naive", kSmall, kBig);

    ModelDecision d = best_model_per_series(s.reports, s.matrix, "proposed");
    CHECK(d.best_model == "proposed");
    CHECK(d.source == "fallback");
}

TEST_CASE("decision: bit-identical forecasts are a tie")
{
    Scenario s;
    s.add("proposed", 75.0);
    s.add("naive", 75.0);
    s.add("ar", 40.0);
    s.compare("proposed", "naive", kMid, kMid);
    s.compare("proposed", "ar", kMid, kBig);
    s.compare("ar", "naive", kBig, kMid);

    ModelDecision d = best_model_per_series(s.reports, s.matrix, "proposed");
    CHECK(d.result == "tie");
    CHECK(d.source == "tie");
}

TEST_CASE("decision input validation")
{
    Scenario s;
    CHECK_THROWS_AS(best_model_per_series(s.reports, s.matrix, "proposed"),
                    std::invalid_argument);
    s.add("naive", 50.0);
    CHECK_THROWS_AS(best_model_per_series(s.reports, s.matrix, "proposed"),
                    std::invalid_argument);
}
