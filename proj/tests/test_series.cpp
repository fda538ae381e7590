#include <doctest.h>

#include <random>

#include "freemult/errors.hpp"
#include "freemult/series.hpp"
#include "oracles.hpp"

using namespace freemult;

namespace {

TruncatedSeries from(std::initializer_list<cplx> c) { return TruncatedSeries(static_cast<int>(c.size()) - 1, c); }

TruncatedSeries random_series(std::mt19937_64 &rng, int order)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0), mag(0.5, 2.0);
    TruncatedSeries f(order);
    f[1] = std::polar(mag(rng), u(rng));
    for (int k = 2; k <= order; ++k)
        f[k] = cplx(u(rng), u(rng)) * 0.5;
    return f;
}

} // namespace

TEST_CASE("series arithmetic")
{
    const auto p = from({1, 1, 0, 0}) * from({1, -1, 0, 0});
    CHECK(max_coeff_diff(p, from({1, 0, -1, 0})) == 0.0);

    const auto g = from({1, 0, 0, 0}) / from({1, -1, 0, 0});
    CHECK(max_coeff_diff(g, from({1, 1, 1, 1})) == 0.0);
    CHECK_THROWS_AS(from({1, 0, 0}) / TruncatedSeries::identity(2), numerical_error);

    // Mixed orders truncate to the smaller one.
    CHECK((from({1, 2, 3, 4}) + from({1, 1})).order() == 1);
    CHECK(series_arith(from({1, 2}), from({3, 4}), SeriesOp::add)[1] == cplx(6.0));
    CHECK(from({1, 2, 3}).evaluate(0.5) == cplx(1.0 + 1.0 + 0.75));
    CHECK(from({0, 0, 3}).shifted(-2).order() == 0);
    CHECK_THROWS_AS(from({1, 1}).shifted(-1), invalid_input);
    CHECK_THROWS_AS(TruncatedSeries(-1), invalid_input);
}

TEST_CASE("exp and log")
{
    const auto e = series_exp(TruncatedSeries::identity(4));
    CHECK(max_coeff_diff(e, from({1, 1, 0.5, 1.0 / 6, 1.0 / 24})) < 1e-15);

    const auto a = from({0, 2, 1, 0, 0, 0});
    CHECK(max_coeff_diff(series_log(series_exp(a)), a) < 1e-13);

    const double gamma = 0.8;
    const auto c = series_exp(TruncatedSeries::constant(3, cplx(0.0, -gamma)));
    CHECK(std::abs(c[0] - std::polar(1.0, -gamma)) < 1e-15);
    CHECK(std::abs(c[1]) == 0.0);

    CHECK_THROWS_AS(series_log(TruncatedSeries::identity(3)), numerical_error);
}

TEST_CASE("reversion: known coefficients")
{
    const auto g = series_revert(from({0, 1, 1, 0, 0, 0}));
    CHECK(max_coeff_diff(g, from({0, 1, -1, 2, -5, 14})) < 1e-13);

    const auto lin = series_revert(from({0, 2.5, 0, 0}));
    CHECK(max_coeff_diff(lin, from({0, 0.4, 0, 0})) < 1e-15);

    const auto f = from({0, 1, 0.3, 0.1, 0, 0, 0});
    CHECK(max_coeff_diff(series_revert(series_revert(f)), f) < 1e-13);

    CHECK_THROWS_AS(series_revert(from({1, 1, 0})), invalid_input);
    CHECK_THROWS_AS(series_revert(from({0, 0, 1})), numerical_error);
}

TEST_CASE("reversion agrees with Lagrange inversion")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int order = 10;
        const auto f = random_series(rng, order);
        const auto g = series_revert(f);
        const oracle::Poly fc(f.coefficients().begin(), f.coefficients().end());
        const auto lg = oracle::lagrange_revert(fc, order);
        for (int k = 0; k <= order; ++k)
            CHECK(std::abs(g[k] - lg[k]) < 1e-10 * (1.0 + std::abs(lg[k])));
    }
}

TEST_CASE("composition")
{
    // (1 + z) o z / (1 - z)
    TruncatedSeries geo(5);
    for (int k = 1; k <= 5; ++k)
        geo[k] = 1.0;
    CHECK(max_coeff_diff(series_compose(from({1, 1, 0, 0, 0, 0}), geo), from({1, 1, 1, 1, 1, 1})) == 0.0);
    CHECK(max_coeff_diff(series_compose(from({3, 1, 2}), TruncatedSeries(2)), from({3, 0, 0})) == 0.0);
    CHECK_THROWS_AS(series_compose(geo, from({1, 1, 0, 0, 0, 0})), invalid_input);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_series(rng, 8);
        const auto g = series_revert(f);
        CHECK(max_coeff_diff(series_compose(f, g), TruncatedSeries::identity(8)) < 1e-10);
        CHECK(max_coeff_diff(series_compose(g, f), TruncatedSeries::identity(8)) < 1e-10);
        TruncatedSeries a = f;
        a[0] = 0.3;
        CHECK(max_coeff_diff(series_exp(series_log(series_exp(a))), series_exp(a)) < 1e-10);
    }
}

TEST_CASE("derivative")
{
    CHECK(max_coeff_diff(derivative(from({5, 1, 3, 2})), from({1, 6, 6})) == 0.0);
}
