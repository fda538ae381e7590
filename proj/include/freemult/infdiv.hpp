#pragma once

#include <vector>

#include "freemult/freeconv.hpp"
#include "freemult/measure.hpp"
#include "freemult/series.hpp"

namespace freemult {

// boxtimes-infinitely divisible law on the half-line: S = exp(v_{gamma,sigma}),
// sigma a finite measure on [0, +inf].
struct FreeIdPosParams {
    double gamma = 0.0;
    FiniteMeasure sigma{Space::positive};
};

// boxtimes-infinitely divisible law on the circle: Sigma = exp(u_{gamma,sigma}).
// haar marks normalized arclength measure, which has no (gamma, sigma).
struct FreeIdCircParams {
    double gamma = 0.0; // stored in [-pi, pi)
    FiniteMeasure sigma{Space::circle};
    bool haar = false;

    static FreeIdCircParams make(double gamma, FiniteMeasure sigma);
    static FreeIdCircParams haar_measure();
};

// Classically (circledast) infinitely divisible law through its
// Mellin-Fourier transform.
struct ClassicalIdParams {
    double lambda = 0.0;
    FiniteMeasure rho{Space::positive};
};

// v at the point w = z / (1 - z), for z in (-1, 0). The argument is
// returned with the value so grids keyed by w cannot be confused with z.
struct VPoint {
    double argument;
    double value;
};

VPoint v_eval(const FreeIdPosParams &p, double z);

// v at the S-argument w in (-1, 0); equivalently the kernel formula at
// z = w / (1 + w), which may lie anywhere in (-inf, 0).
double v_at(const FreeIdPosParams &p, double w);

// exp(v(w)) at every grid point (grid keyed by the S-argument w).
std::vector<double> idlaw_s_pos(const FreeIdPosParams &p, const GridSpec &grid);

// -i gamma + sigma(T) + 2 sum_j (int t^j dsigma) z^j.
TruncatedSeries u_series(const FreeIdCircParams &p, int order);

// Moments of the circle law through Sigma -> S -> psi^{-1} -> psi.
MomentVector idlaw_moments_circ(const FreeIdCircParams &p, int order);

cplx classical_phi_idlaw(const ClassicalIdParams &p, double s);

// Density of sigma with respect to rho, ((log^2 t + 1) / log^2 t) ((t - 1)^2 / (t^2 + 1));
// its value at t = 1 is 1/2.
double cor34_density(double t);

// Integrand linking gamma + lambda to rho,
// ((t^2 - 1)/(t^2 + 1) - log t / (log^2 t + 1)) (log^2 t + 1) / log^2 t; zero at t = 1.
double cor34_shift_kernel(double t);

// Parameter correspondence between the free and classical limits of one
// array. Requires sigma({0}) = sigma({inf}) = 0.
ClassicalIdParams cor34_map(const FreeIdPosParams &p);
FreeIdPosParams cor34_inverse(const ClassicalIdParams &q);

} // namespace freemult
