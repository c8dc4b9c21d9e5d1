#include <cmath>
#include <vector>

#include "doctest.h"

#include "mfts/errors.hpp"
#include "mfts/rng.hpp"
#include "mfts/series.hpp"
#include "oracles.hpp"

using namespace mfts;

namespace {

Series make(std::vector<double> v) {
    Series s;
    s.values = std::move(v);
    s.label = "t";
    return s;
}

} // namespace

TEST_CASE("log returns of a simple pair") {
    const Series r = log_returns(make({100.0, 110.0}));
    REQUIRE(r.values.size() == 1);
    CHECK(r.values[0] == doctest::Approx(std::log(1.1)).epsilon(1e-14));
}

TEST_CASE("log returns of a constant price") {
    const Series r = log_returns(make({5.0, 5.0, 5.0, 5.0}));
    REQUIRE(r.values.size() == 3);
    for (double v : r.values) CHECK(v == 0.0);
}

TEST_CASE("log returns with exact logarithms") {
    const Series r = log_returns(make({1.0, std::exp(1.0), std::exp(3.0)}));
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r.values[1] == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("log returns reject non-positive prices") {
    CHECK_THROWS_AS(log_returns(make({1.0, 0.0, 2.0})), NonPositivePrice);
    CHECK_THROWS_AS(log_returns(make({1.0, -3.0})), NonPositivePrice);
}

TEST_CASE("log returns shift timestamps to the later endpoint") {
    Series p = make({1.0, 2.0, 3.0});
    p.timestamps = {Date{2020, 1, 1}, Date{2020, 1, 2}, Date{2020, 1, 3}};
    const Series r = log_returns(p);
    REQUIRE(r.timestamps.size() == 2);
    CHECK(r.timestamps[0] == Date{2020, 1, 2});
    CHECK(r.timestamps[1] == Date{2020, 1, 3});
}

TEST_CASE("returns round-trip through price reconstruction") {
    Rng rng(11);
    std::vector<double> r(200);
    for (double& v : r) v = 0.02 * rng.gauss();
    std::vector<double> p(r.size() + 1);
    p[0] = 37.0;
    double acc = std::log(p[0]);
    for (std::size_t i = 0; i < r.size(); ++i) {
        acc += r[i];
        p[i + 1] = std::exp(acc);
    }
    const Series rec = log_returns(make(p));
    REQUIRE(rec.values.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(rec.values[i] == doctest::Approx(r[i]).epsilon(1e-12));
}

TEST_CASE("normalize keeps an already-normal pair") {
    const Series n = normalize(make({1.0, -1.0}));
    CHECK(n.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(n.values[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("normalize rejects zero variance") {
    CHECK_THROWS_AS(normalize(make({3.0, 3.0, 3.0})), DegenerateSeries);
}

TEST_CASE("normalize is idempotent") {
    Rng rng(5);
    std::vector<double> v(300);
    for (double& x : v) x = 10.0 + 3.0 * rng.gauss();
    const Series once = normalize(make(v));
    const Series twice = normalize(once);
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(twice.values[i] == doctest::Approx(once.values[i]).epsilon(1e-12));
}

TEST_CASE("normalize output passes moment assertions over many random inputs") {
    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> v(64);
        for (double& x : v) x = 5.0 * rng.gauss() - 2.0;
        const Series n = normalize(make(v));
        CHECK(std::fabs(mean(n.values)) < 1e-12);
        CHECK(population_variance(n.values) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("profile of a constant series is zero") {
    const Profile p = profile(make({1.0, 1.0, 1.0}));
    for (double v : p.values) CHECK(v == 0.0);
}

TEST_CASE("profile of a zero-mean alternation") {
    const Profile p = profile(make({1.0, -1.0, 1.0, -1.0}));
    REQUIRE(p.values.size() == 4);
    CHECK(p.values[0] == 1.0);
    CHECK(p.values[1] == 0.0);
    CHECK(p.values[2] == 1.0);
    CHECK(p.values[3] == 0.0);
}

TEST_CASE("profile matches direct summation on a random series") {
    Rng rng(7);
    std::vector<double> v(10);
    for (double& x : v) x = rng.gauss();
    const Profile p = profile(make(v));
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i] - m;
        CHECK(p.values[i] == doctest::Approx(acc).epsilon(1e-14));
    }
    CHECK(std::fabs(p.values.back()) < 1e-12);
}

TEST_CASE("profile is linear in scaling") {
    Rng rng(13);
    std::vector<double> v(50);
    for (double& x : v) x = rng.gauss();
    const Profile base = profile(make(v));
    const double a = -2.5;
    std::vector<double> scaled = v;
    for (double& x : scaled) x *= a;
    const Profile sp = profile(make(scaled));
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(sp.values[i] == doctest::Approx(a * base.values[i]).epsilon(1e-12));
}

TEST_CASE("tail fit recovers the exponent of an exact Pareto sample") {
    const auto mags = oracle::pareto_quantile_sample(3.0, 100000);
    Series s;
    s.values = mags;
    s.label = "pareto";
    const TailCurve tail = tail_ccdf(s, 60);
    CHECK(tail.fitted_exponent == doctest::Approx(3.0).epsilon(0.05));
    REQUIRE(tail.thresholds.size() == tail.ccdf.size());
    for (std::size_t i = 1; i < tail.thresholds.size(); ++i) {
        CHECK(tail.thresholds[i] > tail.thresholds[i - 1]);
        CHECK(tail.ccdf[i] <= tail.ccdf[i - 1]);
    }
}

TEST_CASE("tail of an all-equal sample is degenerate") {
    CHECK_THROWS_AS(tail_ccdf(make(std::vector<double>(200, 0.7)), 20), InsufficientData);
}

TEST_CASE("gaussian tails are far steeper than inverse cubic") {
    Rng rng(21);
    std::vector<double> v(100000);
    for (double& x : v) x = rng.gauss();
    const TailCurve tail = tail_ccdf(make(v), 60);
    CHECK(tail.fitted_exponent > 4.0);
}
