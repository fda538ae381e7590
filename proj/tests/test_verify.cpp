#include <doctest.h>

#include <cmath>

#include "freemult/errors.hpp"
#include "freemult/verify.hpp"

using namespace freemult;

namespace {

const std::vector<long> schedule{100, 1000, 10000};

ArraySpec circle(Family f)
{
    ArraySpec s;
    s.space = Space::circle;
    s.family = f;
    return s;
}

} // namespace

TEST_CASE("half-line verification")
{
    ArraySpec pm;
    const auto r = verify_pos(pm, schedule, GridSpec::default_positive(), 1e-2);
    CHECK(r.pass);
    for (const auto &row : r.rows)
        CHECK(row.discrepancy == 0.0);

    ArraySpec ones;
    ones.params.c = 0.0;
    CHECK(verify_pos(ones, schedule, GridSpec::default_positive(), 1e-2).final_discrepancy == 0.0);

    ArraySpec po;
    po.family = Family::two_point_poisson;
    const auto p = verify_pos(po, schedule, GridSpec::default_positive(), 1e-2);
    CHECK(p.pass);
    CHECK(p.rows[0].discrepancy > p.rows[1].discrepancy);

    // tol = 0 fails even when D_n vanishes identically.
    CHECK_FALSE(verify_pos(pm, schedule, GridSpec::default_positive(), 0.0).pass);
    CHECK_THROWS_AS(verify_pos(circle(Family::point_mass), schedule, GridSpec::default_positive(), 1e-2),
                    invalid_input);
    CHECK_THROWS_AS(verify_pos(pm, std::vector<long>{10, 5}, GridSpec::default_positive(), 1e-2), invalid_input);
}

TEST_CASE("circle verification")
{
    const auto pm = verify_circ(circle(Family::point_mass), schedule, 8, 1e-2);
    CHECK(pm.pass);
    for (const auto &row : pm.rows)
        CHECK(row.discrepancy == 0.0);

    auto ones = circle(Family::point_mass);
    ones.params.c = 0.0;
    CHECK(verify_circ(ones, schedule, 8, 1e-2).final_discrepancy == 0.0);

    // Free Poisson: D_n decays like 1/n; at order 4 it is below 1e-2 at n = 1e4.
    const auto po = verify_circ(circle(Family::two_point_poisson), schedule, 4, 1e-2);
    CHECK(po.monotone);
    CHECK(po.pass);
    CHECK(po.rows[0].discrepancy / po.rows[2].discrepancy == doctest::Approx(100.0).epsilon(0.05));
}

TEST_CASE("Haar verification and its negative control")
{
    const auto r = verify_haar(circle(Family::symmetric_pair), schedule);
    CHECK(r.pass);
    CHECK(r.rows[0].first_moment_modulus == doctest::Approx(std::pow(std::cos(0.1 * std::sqrt(10.0)), 100)));
    CHECK(r.rows[2].haar_stat == doctest::Approx(1e4 * (1 - std::cos(0.1))));

    auto ones = circle(Family::point_mass);
    ones.params.c = 0.0;
    const auto neg = verify_haar(ones, schedule);
    CHECK_FALSE(neg.pass);
    CHECK_FALSE(neg.monotone);
    CHECK(neg.rows.back().first_moment_modulus == 1.0);
}

TEST_CASE("classical correspondence check")
{
    const std::vector<long> rows{10, 100, 1000};
    ArraySpec pm;
    CHECK(corollary34_check(pm, rows, default_s_panel(), 1e-12).pass);

    ArraySpec po;
    po.family = Family::two_point_poisson;
    const auto r = corollary34_check(po, rows, default_s_panel(), 5e-2);
    CHECK(r.pass);
    for (const auto &row : r.rows)
        CHECK(row.pruned_mass < 1e-10);

    ArraySpec tiny;
    tiny.family = Family::inline_rows;
    for (long n : {1L, 2L, 3L})
        tiny.inline_rows[n] = {AtomicMeasure(Space::positive, {{1.0, 0.5}, {1e-310, 0.5}})};
    CHECK_THROWS_AS(corollary34_check(tiny, std::vector<long>{1, 2, 3}, default_s_panel(), 1.0), numerical_error);
}

TEST_CASE("report invariants")
{
    ArraySpec po;
    po.family = Family::two_point_poisson;
    for (const auto &r : {verify_pos(po, schedule, GridSpec::default_positive(), 1e-2),
                          verify_circ(circle(Family::two_point_poisson), schedule, 8, 1e-2),
                          verify_haar(circle(Family::symmetric_pair), schedule)}) {
        for (const auto &row : r.rows)
            CHECK(row.discrepancy >= 0.0);
        CHECK(r.final_discrepancy == r.rows.back().discrepancy);
    }
    VerificationReport manual;
    manual.tol = 1.0;
    manual.rows = {{1, 0.5}, {2, 0.6}};
    finalize(manual);
    CHECK_FALSE(manual.monotone);
    CHECK_FALSE(manual.pass);
    CHECK(to_csv(manual).rfind("n,D_n,haarStat,m1Modulus,prunedMass,belowTol\n", 0) == 0);
}
