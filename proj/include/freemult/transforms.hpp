#pragma once

#include "freemult/measure.hpp"
#include "freemult/series.hpp"

namespace freemult {

// Below this first-moment modulus a circle measure is treated as lying
// outside the domain of the Sigma-transform.
inline constexpr double min_first_moment = 1e-8;

// psi(z) = sum_i w_i t_i z / (1 - t_i z). Half-line: z off (0, +inf);
// circle: |z| < 1.
cplx psi_eval(const AtomicMeasure &nu, cplx z);

// The unique z < 0 with psi(z) = w for w in (-1, 0). psi increases strictly
// from -1 to 0 along (-inf, 0), so a bracket built from the extreme atoms
// always contains the root; Newton steps are kept inside it.
double psi_inv_neg(const AtomicMeasure &nu, double w);

// S(x) = (1 + x) / x * psi^{-1}(x) for x in (-1, 0).
double s_eval_pos(const AtomicMeasure &nu, double x);
// log S(x); for a point mass this is exactly -log a.
double log_s_eval_pos(const AtomicMeasure &nu, double x);

// (S(x) - 1) / int (1 - t) / (1 + x - t x) dnu(t), which tends to 1 as nu
// concentrates at 1. Undefined for delta_1 itself.
double s_approx_ratio(const AtomicMeasure &nu, double x);
// sup over the grid of |s_approx_ratio - 1|.
double s_approx_deviation(const AtomicMeasure &nu, const GridSpec &grid);

// c_0 = 0, c_k = k-th moment.
TruncatedSeries psi_series(const AtomicMeasure &nu, int order);

// S-transform as a series around 0, valid whenever the first moment is
// nonzero. Throws numerical_error when |m_1| < min_first_moment.
TruncatedSeries s_series(const AtomicMeasure &nu, int order);

// Sigma(z) = S(z / (1 - z)). Sigma(0) = 1 / m_1.
TruncatedSeries sigma_series(const AtomicMeasure &nu, int order);

// Conversions between the series descriptions of one measure.
TruncatedSeries sigma_from_s(const TruncatedSeries &s);
TruncatedSeries s_from_sigma(const TruncatedSeries &sigma);
// psi series of order s.order() + 1 recovered from an S-series.
TruncatedSeries psi_from_s(const TruncatedSeries &s);

// Phi(s) = sum_i w_i t_i^{i s}.
cplx mellin_fourier(const AtomicMeasure &nu, double s);

} // namespace freemult
