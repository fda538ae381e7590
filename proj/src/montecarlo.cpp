#include "freemult/montecarlo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "freemult/errors.hpp"
#include "freemult/parallel.hpp"

namespace freemult {

namespace {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RealMatrix gaussian_real(std::mt19937_64 &rng, int rows, int cols)
{
    std::normal_distribution<double> g;
    RealMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            m(i, j) = g(rng);
    return m;
}

ComplexMatrix gaussian_complex(std::mt19937_64 &rng, int rows, int cols)
{
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = g(rng);
            m(i, j) = cplx(re, g(rng));
        }
    return m;
}

// First `cols` columns of a Haar orthogonal matrix: QR of a Gaussian matrix
// with the signs of diag(R) divided out.
RealMatrix haar_orthogonal(std::mt19937_64 &rng, int d, int cols)
{
    const Eigen::HouseholderQR<RealMatrix> qr(gaussian_real(rng, d, cols));
    RealMatrix q = qr.householderQ() * RealMatrix::Identity(d, cols);
    for (int j = 0; j < cols; ++j)
        if (qr.matrixQR()(j, j) < 0.0)
            q.col(j) *= -1.0;
    return q;
}

ComplexMatrix haar_unitary(std::mt19937_64 &rng, int d, int cols)
{
    const Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_complex(rng, d, cols));
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, cols);
    for (int j = 0; j < cols; ++j) {
        const cplx r = qr.matrixQR()(j, j);
        if (std::abs(r) > 0.0)
            q.col(j) *= r / std::abs(r);
    }
    return q;
}

// Diagonal entries realizing nu with the given multiplicities.
std::vector<cplx> spectrum(const AtomicMeasure &nu, int d)
{
    const auto mult = atom_multiplicities(nu, d);
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < nu.size(); ++i)
        out.insert(out.end(), static_cast<std::size_t>(mult[i]), nu.point(i));
    return out;
}

// (1/d) tr(M^k) for k = 1..K, from the powers M^1..M^{ceil(K/2)} and
// tr(AB) = sum_ij A_ij B_ji.
template <class Matrix>
std::vector<cplx> normalized_traces(const Matrix &m, int moments)
{
    const int half = (moments + 1) / 2;
    std::vector<Matrix> powers{m};
    for (int j = 2; j <= half; ++j)
        powers.push_back(powers.back() * m);
    const double d = static_cast<double>(m.rows());
    std::vector<cplx> out;
    for (int k = 1; k <= moments; ++k) {
        const int a = (k + 1) / 2;
        const int b = k - a;
        cplx tr;
        if (b == 0)
            tr = cplx(powers[a - 1].trace());
        else
            tr = cplx(powers[a - 1].cwiseProduct(powers[b - 1].transpose()).sum());
        out.push_back(tr / d);
    }
    return out;
}

template <class SampleFn>
MCEstimate run_samples(const MCConfig &cfg, Space space, SampleFn sample)
{
    std::vector<std::vector<cplx>> per_sample(static_cast<std::size_t>(cfg.samples));
    parallel_for(per_sample.size(), [&](std::size_t i) {
        std::mt19937_64 rng(sample_stream_seed(cfg.seed, i));
        per_sample[i] = sample(rng);
    });

    MCEstimate est;
    est.dim = cfg.dim;
    est.samples = cfg.samples;
    est.mean.space = space;
    const double s = static_cast<double>(cfg.samples);
    for (int k = 0; k < cfg.moments; ++k) {
        cplx sum = 0.0;
        for (const auto &v : per_sample)
            sum += v[k];
        const cplx mean = sum / s;
        double spread = 0.0;
        for (const auto &v : per_sample)
            spread += std::norm(v[k] - mean);
        est.mean.values.push_back(mean);
        est.std_error.push_back(cfg.samples > 1 ? std::sqrt(spread / (s * (s - 1.0))) : 0.0);
    }
    return est;
}

} // namespace

void MCConfig::validate() const
{
    if (dim < 2)
        throw invalid_input("Monte Carlo dimension must be at least 2");
    if (samples < 1)
        throw invalid_input("Monte Carlo sample count must be at least 1");
    if (moments < 1)
        throw invalid_input("Monte Carlo moment count must be at least 1");
}

std::vector<int> atom_multiplicities(const AtomicMeasure &nu, int d)
{
    if (d < static_cast<int>(nu.size()))
        throw invalid_input("Monte Carlo dimension is smaller than the atom count");
    std::vector<int> mult;
    std::vector<double> remainder;
    int used = 0;
    for (const auto &a : nu.atoms()) {
        const double x = a.weight * d;
        mult.push_back(static_cast<int>(std::floor(x)));
        remainder.push_back(x - std::floor(x));
        used += mult.back();
    }
    std::vector<std::size_t> order(nu.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t i = 0; used < d; ++i, ++used)
        ++mult[order[i % order.size()]];
    return mult;
}

std::uint64_t sample_stream_seed(std::uint64_t seed, std::uint64_t index)
{
    return splitmix64(splitmix64(seed) ^ index);
}

MCEstimate rmt_oracle_pos(const AtomicMeasure &mu, const AtomicMeasure &nu, const MCConfig &cfg)
{
    cfg.validate();
    if (mu.space() != Space::positive || nu.space() != Space::positive)
        throw invalid_input("rmt_oracle_pos: half-line measures required");
    const int d = cfg.dim;
    const auto a = spectrum(mu, d);
    const auto b = spectrum(nu, d);
    Eigen::VectorXd sqrt_a(d), bv(d);
    for (int i = 0; i < d; ++i) {
        sqrt_a(i) = std::sqrt(a[i].real());
        bv(i) = b[i].real();
    }

    return run_samples(cfg, Space::positive, [&](std::mt19937_64 &rng) {
        if (cfg.complex_unitary) {
            const ComplexMatrix u = haar_unitary(rng, d, d);
            ComplexMatrix m = u * bv.asDiagonal() * u.adjoint();
            m = sqrt_a.asDiagonal() * m * sqrt_a.asDiagonal();
            auto traces = normalized_traces(m, cfg.moments);
            for (auto &t : traces)
                t = t.real();
            return traces;
        }
        const RealMatrix u = haar_orthogonal(rng, d, d);
        RealMatrix m = u * bv.asDiagonal() * u.transpose();
        m = sqrt_a.asDiagonal() * m * sqrt_a.asDiagonal();
        return normalized_traces(m, cfg.moments);
    });
}

MCEstimate rmt_oracle_circ(const AtomicMeasure &mu, const AtomicMeasure &nu, const MCConfig &cfg)
{
    cfg.validate();
    if (mu.space() != Space::circle || nu.space() != Space::circle)
        throw invalid_input("rmt_oracle_circ: circle measures required");
    const int d = cfg.dim;
    const auto a = spectrum(mu, d);
    const auto b = spectrum(nu, d);
    Eigen::VectorXcd av(d), bv(d);
    for (int i = 0; i < d; ++i) {
        av(i) = a[i];
        bv(i) = b[i];
    }

    return run_samples(cfg, Space::circle, [&](std::mt19937_64 &rng) {
        const ComplexMatrix w = haar_unitary(rng, d, d);
        const ComplexMatrix m = av.asDiagonal() * (w * bv.asDiagonal() * w.adjoint());
        return normalized_traces(m, cfg.moments);
    });
}

MCEstimate rmt_oracle_circ_row(std::span<const AtomicMeasure> row, double lambda_angle, const MCConfig &cfg)
{
    cfg.validate();
    if (row.empty())
        throw invalid_input("rmt_oracle_circ_row: empty row");
    const int d = cfg.dim;

    // Per factor: the majority eigenvalue e^{i base} and the deviating ones.
    struct Factor {
        cplx base;
        std::vector<cplx> relative; // eigenvalue / base - 1 on the deviating subspace
    };
    std::vector<Factor> factors;
    for (const auto &nu : row) {
        if (nu.space() != Space::circle)
            throw invalid_input("rmt_oracle_circ_row: circle measures required");
        const auto mult = atom_multiplicities(nu, d);
        const auto major = static_cast<std::size_t>(std::max_element(mult.begin(), mult.end()) - mult.begin());
        Factor f{nu.point(major), {}};
        for (std::size_t i = 0; i < nu.size(); ++i)
            if (i != major)
                f.relative.insert(f.relative.end(), static_cast<std::size_t>(mult[i]), nu.point(i) / f.base - 1.0);
        factors.push_back(std::move(f));
    }

    return run_samples(cfg, Space::circle, [&](std::mt19937_64 &rng) {
        ComplexMatrix m = ComplexMatrix::Identity(d, d) * std::polar(1.0, lambda_angle);
        for (const auto &f : factors) {
            const int r = static_cast<int>(f.relative.size());
            if (r > 0) {
                // W D W^* = base (I + V diag(relative) V^*), V the first r
                // columns of a Haar unitary.
                const ComplexMatrix v = haar_unitary(rng, d, r);
                Eigen::VectorXcd rel(r);
                for (int i = 0; i < r; ++i)
                    rel(i) = f.relative[static_cast<std::size_t>(i)];
                const ComplexMatrix mv = m * v;
                m.noalias() += mv * rel.asDiagonal() * v.adjoint();
            }
            m *= f.base;
        }
        return normalized_traces(m, cfg.moments);
    });
}

} // namespace freemult
