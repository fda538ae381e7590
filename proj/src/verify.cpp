#include "freemult/verify.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "freemult/errors.hpp"
#include "freemult/freeconv.hpp"
#include "freemult/infdiv.hpp"
#include "freemult/parallel.hpp"
#include "freemult/transforms.hpp"

namespace freemult {

namespace {

void check_schedule(std::span<const long> rows)
{
    if (rows.empty())
        throw invalid_input("verify: empty row schedule");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i] <= rows[i - 1])
            throw invalid_input("verify: row schedule must be strictly increasing");
}

void check_tol(double tol)
{
    if (!(tol >= 0.0))
        throw invalid_input("verify: tolerance must be non-negative");
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

VerificationReport start_report(std::string scenario, std::span<const long> rows, double tol)
{
    VerificationReport r;
    r.scenario = std::move(scenario);
    r.tol = tol;
    r.rows.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        r.rows[i].n = rows[i];
    return r;
}

} // namespace

void finalize(VerificationReport &report)
{
    std::vector<double> d;
    for (auto &row : report.rows) {
        row.below_tol = row.discrepancy < report.tol;
        d.push_back(row.discrepancy);
    }
    report.monotone = non_increasing(d);
    report.final_discrepancy = d.empty() ? 0.0 : d.back();
    report.pass = !d.empty() && report.monotone && report.final_discrepancy < report.tol;
}

VerificationReport verify_pos(const ArraySpec &spec, std::span<const long> rows, const GridSpec &grid,
                              double tol)
{
    const auto start = Clock::now();
    spec.validate();
    if (spec.space != Space::positive)
        throw invalid_input("verify_pos: half-line array required");
    validate(grid);
    if (grid.space != Space::positive)
        throw invalid_input("verify_pos: half-line grid required");
    check_schedule(rows);
    check_tol(tol);

    auto report = start_report("verify_pos", rows, tol);
    parallel_for(rows.size(), [&](std::size_t i) {
        const long n = rows[i];
        const auto row = spec.row(n);
        const auto diag = diagnose_row(spec, n);
        const FreeIdPosParams p{diag.gamma, diag.sigma};
        const auto lhs = row_s_product(row, spec.alpha(n), grid);
        double worst = 0.0;
        for (std::size_t j = 0; j < lhs.points.size(); ++j)
            worst = std::max(worst, std::abs(lhs.log_values[j] - v_at(p, lhs.points[j])));
        report.rows[i].discrepancy = worst;
    });
    finalize(report);
    report.runtime_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_circ(const ArraySpec &spec, std::span<const long> rows, int order, double tol)
{
    const auto start = Clock::now();
    spec.validate();
    if (spec.space != Space::circle)
        throw invalid_input("verify_circ: circle array required");
    if (order < 0)
        throw invalid_input("verify_circ: order must be non-negative");
    check_schedule(rows);
    check_tol(tol);

    auto report = start_report("verify_circ", rows, tol);
    parallel_for(rows.size(), [&](std::size_t i) {
        const long n = rows[i];
        const auto row = spec.row(n);
        const auto diag = diagnose_row(spec, n);
        const auto lhs = row_sigma_product(row, spec.lambda_angle(n), order);
        const auto rhs = series_exp(u_series(FreeIdCircParams::make(diag.gamma, diag.sigma), order));
        report.rows[i].discrepancy = max_coeff_diff(lhs, rhs);
        report.rows[i].haar_stat = diag.haar_stat;
        report.rows[i].first_moment_modulus = 1.0 / std::abs(lhs[0]);
    });
    finalize(report);
    report.runtime_seconds = seconds_since(start);
    return report;
}

VerificationReport verify_haar(const ArraySpec &spec, std::span<const long> rows, double tol, double haar_threshold)
{
    const auto start = Clock::now();
    spec.validate();
    if (spec.space != Space::circle)
        throw invalid_input("verify_haar: circle array required");
    check_schedule(rows);
    check_tol(tol);

    auto report = start_report("verify_haar", rows, tol);
    parallel_for(rows.size(), [&](std::size_t i) {
        const long n = rows[i];
        const auto row = spec.row(n);
        const auto diag = diagnose_row(spec, n);
        // log |prod Sigma_k(0)|, accumulated in logs since the product
        // overflows long before the statistic is large.
        double log_modulus = 0.0;
        cplx sigma0 = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k == 0 || !(row[k] == row[k - 1])) {
                const cplx m1 = moment(row[k], 1);
                if (std::abs(m1) < min_first_moment)
                    throw numerical_error("verify_haar: row factor with vanishing first moment");
                sigma0 = sigma_series(row[k], 0)[0];
            }
            log_modulus += std::log(std::abs(sigma0));
        }
        report.rows[i].haar_stat = diag.haar_stat;
        report.rows[i].first_moment_modulus = std::exp(-log_modulus);
        report.rows[i].discrepancy = report.rows[i].first_moment_modulus;
    });

    bool stat_up = true, m1_down = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        stat_up = stat_up && report.rows[i].haar_stat > report.rows[i - 1].haar_stat;
        m1_down = m1_down && report.rows[i].first_moment_modulus < report.rows[i - 1].first_moment_modulus;
    }
    for (auto &row : report.rows)
        row.below_tol = row.discrepancy < tol;
    report.monotone = stat_up && m1_down;
    report.final_discrepancy = report.rows.back().discrepancy;
    report.pass = report.monotone && report.rows.back().haar_stat >= haar_threshold
                  && report.final_discrepancy < tol;
    report.runtime_seconds = seconds_since(start);
    return report;
}

std::vector<double> default_s_panel()
{
    std::vector<double> s;
    for (int i = -30; i <= 30; ++i)
        s.push_back(0.1 * i);
    return s;
}

VerificationReport corollary34_check(const ArraySpec &spec, std::span<const long> rows,
                                     std::span<const double> s_panel, double tol)
{
    const auto start = Clock::now();
    spec.validate();
    if (spec.space != Space::positive)
        throw invalid_input("corollary34_check: half-line array required");
    if (s_panel.empty())
        throw invalid_input("corollary34_check: empty s-panel");
    check_schedule(rows);
    check_tol(tol);

    auto report = start_report("corollary34", rows, tol);
    parallel_for(rows.size(), [&](std::size_t i) {
        const long n = rows[i];
        const auto row = spec.row(n);
        const auto diag = diagnose_row(spec, n);
        if (diag.sigma.mass_at_zero() != 0.0 || diag.sigma.mass_at_infinity() != 0.0)
            throw numerical_error("corollary34_check: sigma_n charges an endpoint");
        const ClassicalIdParams q = cor34_map(FreeIdPosParams{diag.gamma, diag.sigma});

        AtomicMeasure product = point_mass(spec.alpha(n));
        double kept = 1.0;
        for (const auto &nu : row) {
            auto step = classical_multconv_pruned(product, nu, classical_prune_weight);
            kept *= 1.0 - step.pruned_mass;
            product = std::move(step.measure);
        }

        double worst = 0.0;
        for (double s : s_panel)
            worst = std::max(worst, std::abs(mellin_fourier(product, s) - classical_phi_idlaw(q, s)));
        report.rows[i].discrepancy = worst;
        report.rows[i].pruned_mass = 1.0 - kept;
    });
    finalize(report);
    report.runtime_seconds = seconds_since(start);
    return report;
}

std::string to_csv(const VerificationReport &report)
{
    std::ostringstream out;
    out.precision(17);
    out << "n,D_n,haarStat,m1Modulus,prunedMass,belowTol\n";
    for (const auto &r : report.rows)
        out << r.n << ',' << r.discrepancy << ',' << r.haar_stat << ',' << r.first_moment_modulus << ','
            << r.pruned_mass << ',' << (r.below_tol ? "true" : "false") << '\n';
    return out.str();
}

} // namespace freemult
