#include "freemult/freeconv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "freemult/errors.hpp"
#include "freemult/transforms.hpp"

namespace freemult {

MomentVector moments_of(const AtomicMeasure &nu, int order)
{
    MomentVector m{nu.space(), {}};
    for (int k = 1; k <= order; ++k)
        m.values.push_back(moment(nu, k));
    return m;
}

MomentVector moments_from_psi(const TruncatedSeries &psi, Space space)
{
    MomentVector m{space, {}};
    for (int k = 1; k <= psi.order(); ++k)
        m.values.push_back(psi[k]);
    return m;
}

MomentVector boxtimes_moments(const AtomicMeasure &mu, const AtomicMeasure &nu, int order)
{
    if (mu.space() != nu.space())
        throw invalid_input("boxtimes_moments: measures live on different spaces");
    if (order < 1)
        throw invalid_input("boxtimes_moments: order must be at least 1");
    TruncatedSeries s;
    if (mu.space() == Space::positive) {
        s = s_series(mu, order - 1) * s_series(nu, order - 1);
    } else {
        s = s_from_sigma(sigma_series(mu, order - 1) * sigma_series(nu, order - 1));
    }
    return moments_from_psi(psi_from_s(s), mu.space());
}

RowSProduct row_s_product(std::span<const AtomicMeasure> row, double alpha, const GridSpec &grid)
{
    validate(grid);
    if (grid.space != Space::positive)
        throw invalid_input("row_s_product: half-line grid required");
    if (!(alpha > 0.0))
        throw invalid_input("row_s_product: alpha must be positive");
    RowSProduct out;
    for (const auto &z : grid.points) {
        const double x = z.real();
        double value = 1.0 / alpha;
        double log_value = -std::log(alpha);
        double s = 0.0, log_s = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            // Rows usually repeat one measure; reuse the root when they do.
            if (k == 0 || !(row[k] == row[k - 1])) {
                s = s_eval_pos(row[k], x);
                if (!(s > 0.0))
                    throw numerical_error("row_s_product: S left the right half-plane");
                log_s = log_s_eval_pos(row[k], x);
            }
            value *= s;
            log_value += log_s;
        }
        out.points.push_back(x);
        out.values.push_back(value);
        out.log_values.push_back(log_value);
    }
    return out;
}

TruncatedSeries row_sigma_product(std::span<const AtomicMeasure> row, double lambda_angle, int order)
{
    // Summed in the log domain; a point mass contributes exactly -i theta, so
    // rows of point masses reproduce exp(-i gamma_n) without drift.
    TruncatedSeries acc = TruncatedSeries::constant(order, cplx(0.0, -lambda_angle));
    TruncatedSeries log_factor;
    for (std::size_t k = 0; k < row.size(); ++k) {
        const AtomicMeasure &nu = row[k];
        if (nu.space() != Space::circle)
            throw invalid_input("row_sigma_product: circle measures required");
        if (k > 0 && nu == row[k - 1]) {
            acc += log_factor;
            continue;
        }
        if (nu.size() == 1)
            log_factor = TruncatedSeries::constant(order, cplx(0.0, -nu.atoms()[0].position));
        else
            log_factor = series_log(sigma_series(nu, order));
        acc += log_factor;
    }
    return series_exp(acc);
}

namespace {

// Coefficients of M(z)^s for s = 0..n, M = 1 + sum m_k z^k, truncated at n.
std::vector<std::vector<cplx>> powers_of_moment_series(std::span<const cplx> m, int n)
{
    std::vector<cplx> base(n + 1, 0.0);
    base[0] = 1.0;
    for (int k = 1; k <= n && k <= static_cast<int>(m.size()); ++k)
        base[k] = m[k - 1];
    std::vector<std::vector<cplx>> pw(n + 1, std::vector<cplx>(n + 1, 0.0));
    pw[0][0] = 1.0;
    for (int s = 1; s <= n; ++s)
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j)
                pw[s][i + j] += pw[s - 1][i] * base[j];
    return pw;
}

} // namespace

std::vector<cplx> free_cumulants(std::span<const cplx> moments)
{
    const int n = static_cast<int>(moments.size());
    const auto pw = powers_of_moment_series(moments, n);
    std::vector<cplx> kappa(n, 0.0);
    for (int k = 1; k <= n; ++k) {
        cplx acc = moments[k - 1];
        for (int s = 1; s < k; ++s)
            acc -= kappa[s - 1] * pw[s][k - s];
        kappa[k - 1] = acc;
    }
    return kappa;
}

std::vector<cplx> moments_from_cumulants(std::span<const cplx> cumulants)
{
    const int n = static_cast<int>(cumulants.size());
    std::vector<cplx> m(n, 0.0);
    for (int k = 1; k <= n; ++k) {
        // [z^{k-s}] M^s only involves m_1..m_{k-1} for s >= 1.
        const auto pw = powers_of_moment_series(std::span<const cplx>(m.data(), k - 1), k);
        cplx acc = 0.0;
        for (int s = 1; s <= k; ++s)
            acc += cumulants[s - 1] * pw[s][k - s];
        m[k - 1] = acc;
    }
    return m;
}

namespace {

// Element i joins block b only if no other block has elements on both sides
// of some element of b below i.
bool can_join(const std::vector<int> &label, int b, int i)
{
    for (int p = 0; p < i; ++p) {
        if (label[p] != b)
            continue;
        for (int a = 0; a < p; ++a)
            for (int c = p + 1; c < i; ++c)
                if (label[a] == label[c] && label[a] != b)
                    return false;
    }
    return true;
}

void build_nc(int n, int i, std::vector<int> &label, int blocks, std::vector<NonCrossingPartition> &out)
{
    if (i == n) {
        NonCrossingPartition pi(blocks);
        for (int e = 0; e < n; ++e)
            pi[label[e]].push_back(e);
        out.push_back(std::move(pi));
        return;
    }
    for (int b = 0; b < blocks; ++b) {
        if (!can_join(label, b, i))
            continue;
        label[i] = b;
        build_nc(n, i + 1, label, blocks, out);
    }
    label[i] = blocks;
    build_nc(n, i + 1, label, blocks + 1, out);
}

std::array<std::vector<NonCrossingPartition>, max_nc_order + 1> build_all_nc()
{
    std::array<std::vector<NonCrossingPartition>, max_nc_order + 1> all;
    all[0].push_back({});
    for (int n = 1; n <= max_nc_order; ++n) {
        std::vector<int> label(n, -1);
        build_nc(n, 0, label, 0, all[n]);
    }
    return all;
}

} // namespace

const std::vector<NonCrossingPartition> &non_crossing_partitions(int n)
{
    if (n < 0 || n > max_nc_order)
        throw invalid_input("non_crossing_partitions: n must lie in [0, " + std::to_string(max_nc_order) + "]");
    static const auto all = build_all_nc();
    return all[n];
}

std::vector<int> kreweras_block_sizes(const NonCrossingPartition &pi, int n)
{
    // K(pi) = pi^{-1} gamma with gamma = (0 1 .. n-1) and pi the permutation
    // cycling each block in increasing order.
    std::vector<int> inv(n, -1);
    for (const auto &block : pi)
        for (std::size_t j = 0; j < block.size(); ++j)
            inv[block[(j + 1) % block.size()]] = block[j];
    std::vector<bool> seen(n, false);
    std::vector<int> sizes;
    for (int start = 0; start < n; ++start) {
        if (seen[start])
            continue;
        int len = 0;
        for (int i = start; !seen[i]; i = inv[(i + 1) % n]) {
            seen[i] = true;
            ++len;
        }
        sizes.push_back(len);
    }
    return sizes;
}

MomentVector nc_moment_oracle(const AtomicMeasure &mu, const AtomicMeasure &nu, int order)
{
    if (mu.space() != nu.space())
        throw invalid_input("nc_moment_oracle: measures live on different spaces");
    if (order < 1 || order > max_nc_order)
        throw invalid_input("nc_moment_oracle: order must lie in [1, " + std::to_string(max_nc_order) + "]");
    const auto mu_m = moments_of(mu, order);
    const auto nu_m = moments_of(nu, order);
    const auto kappa = free_cumulants(mu_m.values);
    MomentVector out{mu.space(), {}};
    for (int n = 1; n <= order; ++n) {
        cplx total = 0.0;
        for (const auto &pi : non_crossing_partitions(n)) {
            cplx term = 1.0;
            for (const auto &block : pi)
                term *= kappa[block.size() - 1];
            for (int size : kreweras_block_sizes(pi, n))
                term *= nu_m(size);
            total += term;
        }
        out.values.push_back(total);
    }
    return out;
}

} // namespace freemult
