#include <doctest.h>

#include <cmath>

#include "freemult/arrays.hpp"
#include "freemult/errors.hpp"
#include "freemult/infdiv.hpp"
#include "freemult/montecarlo.hpp"

using namespace freemult;

namespace {
const AtomicMeasure half(Space::positive, {{1.0, 0.5}, {2.0, 0.5}});
}

TEST_CASE("multiplicities round to the dimension")
{
    CHECK(atom_multiplicities(half, 7) == std::vector<int>{4, 3});
    const AtomicMeasure three(Space::positive, {{1.0, 0.2}, {2.0, 0.3}, {3.0, 0.5}});
    CHECK(atom_multiplicities(three, 10) == std::vector<int>{2, 3, 5});
    CHECK_THROWS_AS(atom_multiplicities(three, 2), invalid_input);
}

TEST_CASE("configuration is validated")
{
    MCConfig c;
    c.dim = 1;
    CHECK_THROWS_AS(rmt_oracle_pos(half, half, c), invalid_input);
    c.dim = 8;
    c.samples = 0;
    CHECK_THROWS_AS(rmt_oracle_pos(half, half, c), invalid_input);
    c.samples = 1;
    CHECK_THROWS_AS(rmt_oracle_pos(half, circle_point_mass(0.1), c), invalid_input);
}

TEST_CASE("scalar matrices give exact moments")
{
    MCConfig c;
    c.dim = 16;
    c.samples = 3;
    const auto e = rmt_oracle_pos(point_mass(2.0), point_mass(1.5), c);
    for (int k = 1; k <= 4; ++k)
        CHECK(e.mean(k).real() == doctest::Approx(std::pow(3.0, k)).epsilon(1e-12));

    c.space = Space::circle;
    const auto u = rmt_oracle_circ(circle_point_mass(0.3), circle_point_mass(0.4), c);
    for (int k = 1; k <= 4; ++k)
        CHECK(std::abs(u.mean(k) - std::polar(1.0, 0.7 * k)) < 1e-12);
}

TEST_CASE("fixed seeds reproduce bit for bit")
{
    MCConfig c;
    c.dim = 32;
    c.samples = 6;
    c.seed = 99;
    const auto a = rmt_oracle_pos(half, half, c);
    const auto b = rmt_oracle_pos(half, half, c);
    CHECK(a.mean.values == b.mean.values);
    CHECK(a.std_error == b.std_error);
    c.seed = 100;
    CHECK(rmt_oracle_pos(half, half, c).mean.values != a.mean.values);
    CHECK(sample_stream_seed(1, 2) != sample_stream_seed(2, 1));
}

TEST_CASE("unitary model agrees with the series within 3 standard errors")
{
    // Complex Haar conjugation keeps the finite-size bias at O(1/d^2), well
    // below the sampling error here.
    MCConfig c;
    c.dim = 96;
    c.samples = 150;
    c.complex_unitary = true;
    const AtomicMeasure mu(Space::positive, {{0.5, 0.25}, {1.5, 0.75}});
    const auto exact = boxtimes_moments(mu, half, 4);
    for (std::uint64_t seed : {1u, 2u}) {
        c.seed = seed;
        const auto e = rmt_oracle_pos(mu, half, c);
        for (int k = 1; k <= 4; ++k)
            CHECK(std::abs(e.mean(k).real() - exact(k).real()) < 3.0 * e.std_error[k - 1] + 1e-12);
    }
}

TEST_CASE("circle model: first moments multiply")
{
    MCConfig c;
    c.dim = 64;
    c.samples = 40;
    c.space = Space::circle;
    const AtomicMeasure a(Space::circle, {{0.3, 0.5}, {1.2, 0.5}});
    const AtomicMeasure b(Space::circle, {{-0.5, 0.25}, {2.0, 0.75}});
    const auto e = rmt_oracle_circ(a, b, c);
    const cplx expected = moment(a, 1) * moment(b, 1);
    CHECK(std::abs(e.mean(1) - expected) < 4.0 * e.std_error[0] + 1e-12);
    const auto ex = boxtimes_moments(a, b, 4);
    for (int k = 2; k <= 4; ++k)
        CHECK(std::abs(e.mean(k) - ex(k)) < 0.05);
}

TEST_CASE("free Poisson circle row matches the limit law")
{
    ArraySpec spec;
    spec.space = Space::circle;
    spec.family = Family::two_point_poisson;
    const long n = 200;
    const auto d = diagnose_row(spec, n);
    const auto predicted = idlaw_moments_circ(FreeIdCircParams::make(d.gamma, d.sigma), 4);
    MCConfig c;
    c.dim = 200;
    c.samples = 8;
    c.space = Space::circle;
    c.seed = 4;
    const auto e = rmt_oracle_circ_row(spec.row(n), 0.0, c);
    for (int k = 1; k <= 4; ++k)
        CHECK(std::abs(e.mean(k) - predicted(k)) < 0.05 * std::abs(predicted(k)));
}
