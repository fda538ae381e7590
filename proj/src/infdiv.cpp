#include "freemult/infdiv.hpp"

#include <cmath>
#include <string>

#include "freemult/errors.hpp"
#include "freemult/transforms.hpp"

namespace freemult {

FreeIdCircParams FreeIdCircParams::make(double gamma, FiniteMeasure sigma)
{
    if (sigma.space() != Space::circle)
        throw invalid_input("circle law needs sigma on the circle");
    return {wrap_angle(gamma), std::move(sigma), false};
}

FreeIdCircParams FreeIdCircParams::haar_measure() { return {0.0, FiniteMeasure(Space::circle), true}; }

namespace {

void check_pos(const FreeIdPosParams &p)
{
    if (p.sigma.space() != Space::positive)
        throw invalid_input("half-line law needs sigma on [0, +inf]");
}

// gamma - sigma({inf}) z + int_{[0,inf)} (1 + t z) / (z - t) dsigma(t), z < 0.
double v_kernel(const FreeIdPosParams &p, double z)
{
    double v = p.gamma - p.sigma.mass_at_infinity() * z;
    if (p.sigma.mass_at_zero() != 0.0)
        v += p.sigma.mass_at_zero() / z;
    for (const auto &a : p.sigma.atoms())
        v += a.weight * (1.0 + a.position * z) / (z - a.position);
    return v;
}

} // namespace

VPoint v_eval(const FreeIdPosParams &p, double z)
{
    check_pos(p);
    if (!(z > -1.0 && z < 0.0))
        throw invalid_input("v_eval: z must lie in (-1, 0)");
    return {z / (1.0 - z), v_kernel(p, z)};
}

double v_at(const FreeIdPosParams &p, double w)
{
    check_pos(p);
    if (!(w > -1.0 && w < 0.0))
        throw invalid_input("v_at: argument must lie in (-1, 0)");
    return v_kernel(p, w / (1.0 + w));
}

std::vector<double> idlaw_s_pos(const FreeIdPosParams &p, const GridSpec &grid)
{
    validate(grid);
    if (grid.space != Space::positive)
        throw invalid_input("idlaw_s_pos: half-line grid required");
    std::vector<double> out;
    for (const auto &w : grid.points)
        out.push_back(std::exp(v_at(p, w.real())));
    return out;
}

TruncatedSeries u_series(const FreeIdCircParams &p, int order)
{
    if (p.haar)
        throw invalid_input("Haar measure has no Sigma-transform");
    TruncatedSeries u(order);
    u[0] = cplx(p.sigma.total_mass(), -p.gamma);
    for (int j = 1; j <= order; ++j) {
        cplx mj = 0.0;
        for (const auto &a : p.sigma.atoms())
            mj += a.weight * std::polar(1.0, j * a.position);
        u[j] = 2.0 * mj;
    }
    return u;
}

MomentVector idlaw_moments_circ(const FreeIdCircParams &p, int order)
{
    if (order < 1)
        throw invalid_input("idlaw_moments_circ: order must be at least 1");
    const TruncatedSeries sigma = series_exp(u_series(p, order - 1));
    return moments_from_psi(psi_from_s(s_from_sigma(sigma)), Space::circle);
}

namespace {

// x - sin x without cancellation for small x.
double x_minus_sin(double x)
{
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
    }
    return x - std::sin(x);
}

} // namespace

cplx classical_phi_idlaw(const ClassicalIdParams &p, double s)
{
    cplx exponent(0.0, p.lambda * s);
    for (const auto &a : p.rho.atoms()) {
        const double x = std::log(a.position);
        if (x == 0.0) {
            exponent += a.weight * (-0.5 * s * s);
            continue;
        }
        // t^{-is} - 1 + i s x / (x^2 + 1), split so that the small-x
        // cancellation is done analytically.
        const double sx = s * x;
        const double half = std::sin(0.5 * sx);
        const double re = -2.0 * half * half;
        const double im = x_minus_sin(sx) - sx * x * x / (1.0 + x * x);
        const double factor = (x * x + 1.0) / (x * x);
        exponent += a.weight * factor * cplx(re, im);
    }
    // Endpoint masses of rho are not part of the Levy measure on (0, inf).
    return std::exp(exponent);
}

double cor34_density(double t)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw invalid_input("cor34_density: t must be a positive real");
    if (t == 1.0)
        return 0.5;
    const double x = std::log(t);
    const double q = std::expm1(x) / x; // (t - 1) / log t
    return (1.0 + x * x) * q * q / (t * t + 1.0);
}

double cor34_shift_kernel(double t)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw invalid_input("cor34_shift_kernel: t must be a positive real");
    const double x = std::log(t);
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return x * (2.0 / 3.0 - x2 / 5.0 + 5.0 * x2 * x2 / 63.0);
    }
    return (std::tanh(x) - x / (1.0 + x * x)) * (1.0 + x * x) / (x * x);
}

ClassicalIdParams cor34_map(const FreeIdPosParams &p)
{
    check_pos(p);
    if (p.sigma.mass_at_zero() != 0.0 || p.sigma.mass_at_infinity() != 0.0)
        throw invalid_input("cor34_map: sigma must not charge 0 or +inf");
    FiniteMeasureBuilder rho(Space::positive);
    double shift = 0.0;
    for (const auto &a : p.sigma.atoms()) {
        const double r = a.weight / cor34_density(a.position);
        rho.add(a.position, r);
        shift += r * cor34_shift_kernel(a.position);
    }
    return {-p.gamma + shift, std::move(rho).build()};
}

FreeIdPosParams cor34_inverse(const ClassicalIdParams &q)
{
    if (q.rho.space() != Space::positive || q.rho.mass_at_zero() != 0.0 || q.rho.mass_at_infinity() != 0.0)
        throw invalid_input("cor34_inverse: rho must be a finite measure on (0, +inf)");
    FiniteMeasureBuilder sigma(Space::positive);
    double shift = 0.0;
    for (const auto &a : q.rho.atoms()) {
        sigma.add(a.position, a.weight * cor34_density(a.position));
        shift += a.weight * cor34_shift_kernel(a.position);
    }
    return {-q.lambda + shift, std::move(sigma).build()};
}

} // namespace freemult
