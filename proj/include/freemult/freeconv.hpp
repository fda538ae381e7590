#pragma once

#include <span>
#include <vector>

#include "freemult/measure.hpp"
#include "freemult/series.hpp"

namespace freemult {

// Moments m_1..m_N of a measure; m_0 = 1 is implicit.
struct MomentVector {
    Space space = Space::positive;
    std::vector<cplx> values; // values[k - 1] = m_k

    int order() const { return static_cast<int>(values.size()); }
    cplx operator()(int k) const { return k == 0 ? cplx(1.0) : values.at(k - 1); }
};

MomentVector moments_of(const AtomicMeasure &nu, int order);

// Moments read off a psi-series.
MomentVector moments_from_psi(const TruncatedSeries &psi, Space space);

// Moments of mu boxtimes nu through S-transform (half-line) or
// Sigma-transform (circle) multiplication.
MomentVector boxtimes_moments(const AtomicMeasure &mu, const AtomicMeasure &nu, int order);

struct RowSProduct {
    std::vector<double> points;
    // (1 / alpha) prod_k S_k(x) at each grid point.
    std::vector<double> values;
    // -log alpha + sum_k log S_k(x), summed in row order.
    std::vector<double> log_values;
};

RowSProduct row_s_product(std::span<const AtomicMeasure> row, double alpha, const GridSpec &grid);

// (1 / lambda) prod_k Sigma_k(z) with lambda = e^{i lambda_angle}.
TruncatedSeries row_sigma_product(std::span<const AtomicMeasure> row, double lambda_angle, int order);

// Moment-cumulant relations over non-crossing partitions, through the
// functional recursion m_n = sum_s kappa_s [z^{n-s}] M(z)^s.
std::vector<cplx> free_cumulants(std::span<const cplx> moments);
std::vector<cplx> moments_from_cumulants(std::span<const cplx> cumulants);

// Blocks are sorted, elements are 0-based.
using NonCrossingPartition = std::vector<std::vector<int>>;

inline constexpr int max_nc_order = 8;

// All non-crossing partitions of {0, .., n-1}, n <= max_nc_order. Built once
// per process; the returned reference stays valid.
const std::vector<NonCrossingPartition> &non_crossing_partitions(int n);

// Block sizes of the Kreweras complement.
std::vector<int> kreweras_block_sizes(const NonCrossingPartition &pi, int n);

// m_n(mu boxtimes nu) = sum_{pi in NC(n)} kappa_pi[mu] m_{K(pi)}[nu],
// by exhaustive enumeration. Order at most max_nc_order.
MomentVector nc_moment_oracle(const AtomicMeasure &mu, const AtomicMeasure &nu, int order);

} // namespace freemult
