#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "freemult/errors.hpp"
#include "freemult/infdiv.hpp"
#include "freemult/transforms.hpp"

using namespace freemult;

TEST_CASE("v on the half-line")
{
    FreeIdPosParams p{0.4, FiniteMeasure(Space::positive)};
    const auto v = v_eval(p, -0.3);
    CHECK(v.value == 0.4);
    CHECK(v.argument == doctest::Approx(-0.3 / 1.3));

    p.sigma = FiniteMeasure(Space::positive, {}, 0.0, 0.7);
    CHECK(v_eval(p, -0.5).value == doctest::Approx(0.4 + 0.35));

    const FreeIdPosParams unit{0.0, FiniteMeasure(Space::positive, {{1.0, 1.0}})};
    const auto u = v_eval(unit, -0.5);
    CHECK(u.argument == doctest::Approx(-1.0 / 3.0));
    CHECK(u.value == doctest::Approx(-1.0 / 3.0));
    CHECK(v_at(unit, u.argument) == doctest::Approx(u.value).epsilon(1e-14));

    CHECK_THROWS_AS(v_eval(unit, 0.1), invalid_input);
    CHECK_THROWS_AS(v_at(unit, -1.0), invalid_input);
}

TEST_CASE("S of half-line laws")
{
    const auto grid = GridSpec::default_positive();
    const FreeIdPosParams point{-std::log(2.5), FiniteMeasure(Space::positive)};
    for (double s : idlaw_s_pos(point, grid))
        CHECK(s == doctest::Approx(s_eval_pos(point_mass(2.5), -0.2)).epsilon(1e-14));
    for (double s : idlaw_s_pos(FreeIdPosParams{}, grid))
        CHECK(s == 1.0);

    const double c = 0.6, g = 0.2;
    const FreeIdPosParams at_inf{g, FiniteMeasure(Space::positive, {}, 0.0, c)};
    const auto vals = idlaw_s_pos(at_inf, grid);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double w = grid.points[i].real();
        CHECK(vals[i] == doctest::Approx(std::exp(g - c * w / (1.0 + w))).epsilon(1e-14));
    }
}

TEST_CASE("u on the circle")
{
    const auto p0 = FreeIdCircParams::make(0.3, FiniteMeasure(Space::circle));
    const auto u0 = u_series(p0, 3);
    CHECK(u0[0] == cplx(0.0, -0.3));
    CHECK(u0[1] == cplx(0.0));

    const double c = 0.4;
    const auto p1 = FreeIdCircParams::make(0.0, FiniteMeasure(Space::circle, {{0.0, c}}));
    const auto u1 = u_series(p1, 4);
    CHECK(u1[0].real() == doctest::Approx(c));
    for (int k = 1; k <= 4; ++k)
        CHECK(u1[k].real() == doctest::Approx(2.0 * c));

    CHECK_THROWS_AS(u_series(FreeIdCircParams::haar_measure(), 3), invalid_input);
    CHECK_THROWS_AS(FreeIdCircParams::make(0.0, FiniteMeasure(Space::positive)), invalid_input);
    CHECK(FreeIdCircParams::make(4.0, FiniteMeasure(Space::circle)).gamma == doctest::Approx(4.0 - 2 * pi));
}

TEST_CASE("circle law moments")
{
    const double g = 0.7;
    const auto m = idlaw_moments_circ(FreeIdCircParams::make(g, FiniteMeasure(Space::circle)), 5);
    for (int k = 1; k <= 5; ++k)
        CHECK(std::abs(m(k) - std::polar(1.0, k * g)) < 1e-13);

    const FiniteMeasure sigma(Space::circle, {{pi / 3, 0.5}, {-1.0, 0.2}});
    const auto m1 = idlaw_moments_circ(FreeIdCircParams::make(g, sigma), 3)(1);
    CHECK(std::abs(m1 - std::exp(cplx(-sigma.total_mass(), g))) < 1e-13);

    CHECK_THROWS_AS(idlaw_moments_circ(FreeIdCircParams::haar_measure(), 3), invalid_input);
}

TEST_CASE("classical Mellin-Fourier laws")
{
    ClassicalIdParams q;
    q.lambda = 0.9;
    CHECK(std::abs(classical_phi_idlaw(q, 2.0) - std::polar(1.0, 1.8)) < 1e-15);

    q.lambda = 0.0;
    q.rho = FiniteMeasure(Space::positive, {{1.0, 1.0}});
    CHECK(classical_phi_idlaw(q, 1.0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(classical_phi_idlaw(q, 0.0) == cplx(1.0));

    // Frozen 40-digit reference value.
    q.lambda = 0.4;
    q.rho = FiniteMeasure(Space::positive, {{2.0, 0.7}, {0.5, 0.3}});
    const cplx v = classical_phi_idlaw(q, 1.3);
    CHECK(v.real() == doctest::Approx(0.29656342252177763095).epsilon(1e-13));
    CHECK(v.imag() == doctest::Approx(0.092999510544217235473).epsilon(1e-13));

    // Atoms approaching 1 reproduce the Gaussian term continuously.
    q.lambda = 0.0;
    q.rho = FiniteMeasure(Space::positive, {{1.0 + 1e-7, 1.0}});
    CHECK(std::abs(classical_phi_idlaw(q, 1.0) - std::exp(-0.5)) < 1e-6);
}

TEST_CASE("correspondence kernels")
{
    // Frozen 40-digit reference values.
    struct Ref {
        double t, density, shift;
    };
    const Ref refs[] = {{0.001, 1.018914943554977302, -0.8761899860107601809},
                        {0.5, 0.61627379620112155957, -0.40612634771440127136},
                        {0.999, 0.50000029195847707909, -0.00066700002208875152183},
                        {1.003, 0.5000026171366447059, 0.0019970006107666834618},
                        {2.0, 0.61627379620112155957, 0.40612634771440127136},
                        {10.0, 0.95324304413802701254, 0.7307803498210034099},
                        {1e6, 1.005237203327450555, 0.932856800153325715}};
    for (const auto &r : refs) {
        CHECK(cor34_density(r.t) == doctest::Approx(r.density).epsilon(1e-13));
        CHECK(cor34_shift_kernel(r.t) == doctest::Approx(r.shift).epsilon(1e-11));
    }
    CHECK(cor34_density(1.0) == 0.5);
    CHECK(cor34_shift_kernel(1.0) == 0.0);
    // Both branches of the shift kernel meet at |log t| = 1e-2.
    const double edge = std::exp(1e-2);
    CHECK(cor34_shift_kernel(std::nextafter(edge, 0.0)) == doctest::Approx(cor34_shift_kernel(edge)).epsilon(1e-10));
    CHECK_THROWS_AS(cor34_density(0.0), invalid_input);
    CHECK_THROWS_AS(cor34_shift_kernel(std::numeric_limits<double>::infinity()), invalid_input);
}

TEST_CASE("correspondence map")
{
    const auto q0 = cor34_map(FreeIdPosParams{0.35, FiniteMeasure(Space::positive)});
    CHECK(q0.rho.is_zero());
    CHECK(q0.lambda == -0.35);

    const auto q1 = cor34_map(FreeIdPosParams{0.0, FiniteMeasure(Space::positive, {{1.0, 0.5}})});
    REQUIRE(q1.rho.atoms().size() == 1);
    CHECK(q1.rho.atoms()[0].weight == doctest::Approx(1.0));

    const FreeIdPosParams p{0.2, FiniteMeasure(Space::positive, {{2.0, 0.3}, {0.5, 0.1}})};
    const auto back = cor34_inverse(cor34_map(p));
    CHECK(back.gamma == doctest::Approx(p.gamma).epsilon(1e-14));
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(back.sigma.atoms()[i].weight == doctest::Approx(p.sigma.atoms()[i].weight).epsilon(1e-14));

    // rho mass = int (log^2 t / (log^2 t + 1)) ((t^2 + 1) / (t - 1)^2) dsigma.
    const auto q = cor34_map(p);
    double expected = 0.0;
    for (const auto &a : p.sigma.atoms()) {
        const double x = std::log(a.position);
        expected += a.weight * x * x / (x * x + 1) * (a.position * a.position + 1) / std::pow(a.position - 1, 2);
    }
    CHECK(q.rho.total_mass() == doctest::Approx(expected).epsilon(1e-14));

    CHECK_THROWS_AS(cor34_map(FreeIdPosParams{0.0, FiniteMeasure(Space::positive, {}, 0.1, 0.0)}), invalid_input);
}
