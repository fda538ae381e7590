#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace freemult {

using cplx = std::complex<double>;

inline constexpr int default_series_order = 12;

// Complex power series c_0 + c_1 z + ... + c_N z^N truncated at order N.
// Binary operations between series of different orders truncate to the
// smaller order.
class TruncatedSeries {
public:
    TruncatedSeries() : coeffs_(1, 0.0) {}
    // Zero series of the given order.
    explicit TruncatedSeries(int order);
    TruncatedSeries(int order, std::span<const cplx> coeffs);
    TruncatedSeries(int order, std::initializer_list<cplx> coeffs);

    static TruncatedSeries constant(int order, cplx c);
    // The series z (requires order >= 1).
    static TruncatedSeries identity(int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const cplx &operator[](int k) const { return coeffs_[k]; }
    cplx &operator[](int k) { return coeffs_[k]; }
    std::span<const cplx> coefficients() const { return coeffs_; }

    TruncatedSeries truncated(int order) const;
    // Multiplication by z^k (k > 0) or division by z^{-k} (k < 0, requires the
    // low coefficients to vanish). The order moves by k.
    TruncatedSeries shifted(int k) const;

    cplx evaluate(cplx z) const;

    TruncatedSeries &operator+=(const TruncatedSeries &b);
    TruncatedSeries &operator-=(const TruncatedSeries &b);
    TruncatedSeries &operator*=(cplx c);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, cplx c) { return a *= c; }
    friend TruncatedSeries operator*(cplx c, TruncatedSeries a) { return a *= c; }
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
    friend TruncatedSeries operator/(const TruncatedSeries &a, const TruncatedSeries &b);

private:
    std::vector<cplx> coeffs_;
};

enum class SeriesOp { add, mul, div };

TruncatedSeries series_arith(const TruncatedSeries &a, const TruncatedSeries &b, SeriesOp op);

TruncatedSeries series_exp(const TruncatedSeries &a);
// Principal branch of log c_0; requires c_0 != 0.
TruncatedSeries series_log(const TruncatedSeries &a);

// f(g(z)); requires g_0 = 0.
TruncatedSeries series_compose(const TruncatedSeries &f, const TruncatedSeries &g);

// Compositional inverse g with f(g(w)) = w; requires f_0 = 0 and f_1 != 0.
// Newton iteration on series, doubling the number of correct coefficients
// per step.
TruncatedSeries series_revert(const TruncatedSeries &f);

TruncatedSeries derivative(const TruncatedSeries &f);

// Largest coefficient modulus of a - b up to the common order.
double max_coeff_diff(const TruncatedSeries &a, const TruncatedSeries &b);

} // namespace freemult
