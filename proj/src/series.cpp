#include "freemult/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "freemult/errors.hpp"

namespace freemult {

namespace {

void check_order(int order)
{
    if (order < 0)
        throw invalid_input("series order must be non-negative");
}

} // namespace

TruncatedSeries::TruncatedSeries(int order)
{
    check_order(order);
    coeffs_.assign(order + 1, 0.0);
}

TruncatedSeries::TruncatedSeries(int order, std::span<const cplx> coeffs) : TruncatedSeries(order)
{
    const auto n = std::min<std::size_t>(coeffs.size(), coeffs_.size());
    std::copy_n(coeffs.begin(), n, coeffs_.begin());
}

TruncatedSeries::TruncatedSeries(int order, std::initializer_list<cplx> coeffs)
    : TruncatedSeries(order, std::span<const cplx>(coeffs.begin(), coeffs.size()))
{
}

TruncatedSeries TruncatedSeries::constant(int order, cplx c)
{
    TruncatedSeries s(order);
    s[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::identity(int order)
{
    if (order < 1)
        throw invalid_input("the series z needs order >= 1");
    TruncatedSeries s(order);
    s[1] = 1.0;
    return s;
}

TruncatedSeries TruncatedSeries::truncated(int order) const
{
    return TruncatedSeries(std::min(order, this->order()), coeffs_);
}

TruncatedSeries TruncatedSeries::shifted(int k) const
{
    if (k >= 0) {
        TruncatedSeries s(order() + k);
        std::copy(coeffs_.begin(), coeffs_.end(), s.coeffs_.begin() + k);
        return s;
    }
    const int drop = -k;
    if (drop > order())
        throw invalid_input("cannot divide a series by a power of z above its order");
    for (int i = 0; i < drop; ++i)
        if (coeffs_[i] != 0.0)
            throw invalid_input("series is not divisible by this power of z");
    TruncatedSeries s(order() - drop);
    std::copy(coeffs_.begin() + drop, coeffs_.end(), s.coeffs_.begin());
    return s;
}

cplx TruncatedSeries::evaluate(cplx z) const
{
    cplx acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

TruncatedSeries &TruncatedSeries::operator+=(const TruncatedSeries &b)
{
    coeffs_.resize(std::min(coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        coeffs_[k] += b.coeffs_[k];
    return *this;
}

TruncatedSeries &TruncatedSeries::operator-=(const TruncatedSeries &b)
{
    coeffs_.resize(std::min(coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        coeffs_[k] -= b.coeffs_[k];
    return *this;
}

TruncatedSeries &TruncatedSeries::operator*=(cplx c)
{
    for (auto &x : coeffs_)
        x *= c;
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
{
    const int n = std::min(a.order(), b.order());
    TruncatedSeries r(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == cplx(0.0))
            continue;
        for (int j = 0; i + j <= n; ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

TruncatedSeries operator/(const TruncatedSeries &a, const TruncatedSeries &b)
{
    if (b[0] == cplx(0.0))
        throw numerical_error("series division by a series with zero constant term");
    const int n = std::min(a.order(), b.order());
    TruncatedSeries q(n);
    for (int k = 0; k <= n; ++k) {
        cplx acc = a[k];
        for (int j = 1; j <= k; ++j)
            acc -= b[j] * q[k - j];
        q[k] = acc / b[0];
    }
    return q;
}

TruncatedSeries series_arith(const TruncatedSeries &a, const TruncatedSeries &b, SeriesOp op)
{
    switch (op) {
    case SeriesOp::add:
        return a + b;
    case SeriesOp::mul:
        return a * b;
    case SeriesOp::div:
        return a / b;
    }
    return a;
}

// b = exp(a) satisfies b' = a' b, i.e. n b_n = sum_{k=1}^n k a_k b_{n-k}.
TruncatedSeries series_exp(const TruncatedSeries &a)
{
    const int n = a.order();
    TruncatedSeries b(n);
    b[0] = std::exp(a[0]);
    for (int m = 1; m <= n; ++m) {
        cplx acc = 0.0;
        for (int k = 1; k <= m; ++k)
            acc += static_cast<double>(k) * a[k] * b[m - k];
        b[m] = acc / static_cast<double>(m);
    }
    return b;
}

// b = log(a) satisfies a b' = a', i.e. a_0 n b_n = n a_n - sum_{k=1}^{n-1} k b_k a_{n-k}.
TruncatedSeries series_log(const TruncatedSeries &a)
{
    if (a[0] == cplx(0.0))
        throw numerical_error("series logarithm needs a nonzero constant term");
    const int n = a.order();
    TruncatedSeries b(n);
    b[0] = std::log(a[0]);
    for (int m = 1; m <= n; ++m) {
        cplx acc = static_cast<double>(m) * a[m];
        for (int k = 1; k < m; ++k)
            acc -= static_cast<double>(k) * b[k] * a[m - k];
        b[m] = acc / (static_cast<double>(m) * a[0]);
    }
    return b;
}

TruncatedSeries series_compose(const TruncatedSeries &f, const TruncatedSeries &g)
{
    if (g[0] != cplx(0.0))
        throw invalid_input("series_compose: inner series must have zero constant term");
    const int n = std::min(f.order(), g.order());
    TruncatedSeries acc = TruncatedSeries::constant(n, f[n]);
    const TruncatedSeries inner = g.truncated(n);
    for (int k = n - 1; k >= 0; --k) {
        acc = acc * inner;
        acc[0] += f[k];
    }
    return acc;
}

TruncatedSeries derivative(const TruncatedSeries &f)
{
    if (f.order() == 0)
        return TruncatedSeries(0);
    TruncatedSeries d(f.order() - 1);
    for (int k = 1; k <= f.order(); ++k)
        d[k - 1] = static_cast<double>(k) * f[k];
    return d;
}

TruncatedSeries series_revert(const TruncatedSeries &f)
{
    const int n = f.order();
    if (n < 1)
        throw invalid_input("series_revert: order must be at least 1");
    if (f[0] != cplx(0.0))
        throw invalid_input("series_revert: constant term must vanish");
    if (f[1] == cplx(0.0))
        throw numerical_error("series_revert: linear coefficient vanishes, series is not invertible");

    // g <- g - (f(g) - w) / f'(g); correct to order p doubles to 2p + 1.
    TruncatedSeries g(n);
    g[1] = 1.0 / f[1];
    const TruncatedSeries fprime = derivative(f);
    for (int correct = 1; correct < n;) {
        const int target = std::min(n, 2 * correct + 1);
        const TruncatedSeries gt = g.truncated(target);
        TruncatedSeries residual = series_compose(f.truncated(target), gt);
        residual[1] -= 1.0;
        TruncatedSeries slope = series_compose(fprime.truncated(target), gt);
        if (slope.order() < target) {
            TruncatedSeries padded(target);
            for (int k = 0; k <= slope.order(); ++k)
                padded[k] = slope[k];
            slope = padded;
        }
        const TruncatedSeries step = residual / slope;
        TruncatedSeries next(n);
        for (int k = 0; k <= target; ++k)
            next[k] = gt[k] - step[k];
        g = next;
        correct = target;
    }
    return g;
}

double max_coeff_diff(const TruncatedSeries &a, const TruncatedSeries &b)
{
    const int n = std::min(a.order(), b.order());
    double m = 0.0;
    for (int k = 0; k <= n; ++k)
        m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

} // namespace freemult
