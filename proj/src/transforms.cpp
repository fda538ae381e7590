#include "freemult/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "freemult/errors.hpp"

namespace freemult {

cplx psi_eval(const AtomicMeasure &nu, cplx z)
{
    if (nu.space() == Space::positive) {
        if (z.imag() == 0.0 && z.real() > 0.0)
            throw invalid_input("psi_eval: z must avoid the positive half-line");
    } else if (!(std::abs(z) < 1.0)) {
        throw invalid_input("psi_eval: circle transform is defined on the open unit disk");
    }
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const cplx tz = nu.point(i) * z;
        const cplx denom = 1.0 - tz;
        if (std::abs(denom) < 1e-300)
            throw numerical_error("psi_eval: z coincides with the reciprocal of an atom");
        sum += nu.atoms()[i].weight * tz / denom;
    }
    return sum;
}

namespace {

double psi_neg(const AtomicMeasure &nu, double z, double &slope)
{
    double value = 0.0;
    slope = 0.0;
    for (const auto &a : nu.atoms()) {
        const double t = a.position;
        const double d = 1.0 - t * z;
        value += a.weight * t * z / d;
        slope += a.weight * t / (d * d);
    }
    return value;
}

} // namespace

double psi_inv_neg(const AtomicMeasure &nu, double w)
{
    if (nu.space() != Space::positive)
        throw invalid_input("psi_inv_neg: half-line measure required");
    if (!(w > -1.0 && w < 0.0))
        throw invalid_input("psi_inv_neg: w must lie in (-1, 0), got " + std::to_string(w));

    // tz/(1 - tz) decreases in t for z < 0, so the smallest atom gives the
    // lower bracket and the largest the upper one.
    const double ratio = w / (1.0 + w);
    double lo = ratio / nu.min_position();
    double hi = ratio / nu.max_position();
    if (nu.size() == 1)
        return lo;

    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double slope = 0.0;
        const double r = psi_neg(nu, z, slope) - w;
        if (r == 0.0)
            return z;
        if (r < 0.0)
            lo = z;
        else
            hi = z;
        double next = z - r / slope;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        const double step = std::abs(next - z);
        z = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z) || hi - lo <= 0.0)
            break;
    }
    return z;
}

double s_eval_pos(const AtomicMeasure &nu, double x)
{
    if (nu.space() == Space::positive && nu.size() == 1 && x > -1.0 && x < 0.0)
        return 1.0 / nu.min_position();
    return (1.0 + x) / x * psi_inv_neg(nu, x);
}

double log_s_eval_pos(const AtomicMeasure &nu, double x)
{
    if (nu.space() == Space::positive && nu.size() == 1 && x > -1.0 && x < 0.0)
        return -std::log(nu.min_position());
    const double s = s_eval_pos(nu, x);
    if (!(s > 0.0))
        throw numerical_error("log S: value left the right half-plane");
    return std::log(s);
}

double s_approx_ratio(const AtomicMeasure &nu, double x)
{
    if (nu.space() != Space::positive)
        throw invalid_input("s_approx_ratio: half-line measure required");
    double denom = 0.0;
    for (const auto &a : nu.atoms())
        denom += a.weight * (1.0 - a.position) / (1.0 + x - a.position * x);
    if (denom == 0.0)
        throw invalid_input("s_approx_ratio: the linear term vanishes");
    return (s_eval_pos(nu, x) - 1.0) / denom;
}

double s_approx_deviation(const AtomicMeasure &nu, const GridSpec &grid)
{
    validate(grid);
    double worst = 0.0;
    for (const auto &z : grid.points)
        worst = std::max(worst, std::abs(s_approx_ratio(nu, z.real()) - 1.0));
    return worst;
}

TruncatedSeries psi_series(const AtomicMeasure &nu, int order)
{
    TruncatedSeries s(order);
    for (int k = 1; k <= order; ++k)
        s[k] = moment(nu, k);
    return s;
}

TruncatedSeries psi_from_s(const TruncatedSeries &s)
{
    // psi^{-1}(w) = w S(w) / (1 + w)
    const int n = s.order();
    TruncatedSeries one_plus = TruncatedSeries::constant(n, 1.0);
    if (n >= 1)
        one_plus[1] = 1.0;
    const TruncatedSeries inverse = (s / one_plus).shifted(1);
    return series_revert(inverse);
}

TruncatedSeries s_series(const AtomicMeasure &nu, int order)
{
    if (std::abs(moment(nu, 1)) < min_first_moment)
        throw numerical_error("S-transform undefined: first moment vanishes");
    const TruncatedSeries inverse = series_revert(psi_series(nu, order + 1));
    TruncatedSeries over_w = inverse.shifted(-1);
    TruncatedSeries one_plus = TruncatedSeries::constant(order, 1.0);
    if (order >= 1)
        one_plus[1] = 1.0;
    return over_w * one_plus;
}

TruncatedSeries sigma_from_s(const TruncatedSeries &s)
{
    const int n = s.order();
    if (n == 0)
        return s;
    // z / (1 - z) = z + z^2 + ...
    TruncatedSeries map(n);
    for (int k = 1; k <= n; ++k)
        map[k] = 1.0;
    return series_compose(s, map);
}

TruncatedSeries s_from_sigma(const TruncatedSeries &sigma)
{
    const int n = sigma.order();
    if (n == 0)
        return sigma;
    // w / (1 + w) = w - w^2 + ...
    TruncatedSeries map(n);
    for (int k = 1; k <= n; ++k)
        map[k] = (k % 2 == 1) ? 1.0 : -1.0;
    return series_compose(sigma, map);
}

TruncatedSeries sigma_series(const AtomicMeasure &nu, int order) { return sigma_from_s(s_series(nu, order)); }

cplx mellin_fourier(const AtomicMeasure &nu, double s)
{
    if (nu.space() != Space::positive)
        throw invalid_input("mellin_fourier: half-line measure required");
    cplx sum = 0.0;
    for (const auto &a : nu.atoms())
        sum += a.weight * std::polar(1.0, s * std::log(a.position));
    return sum;
}

} // namespace freemult
