#include "freemult/arrays.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "freemult/errors.hpp"
#include "freemult/parallel.hpp"

namespace freemult {

std::string_view to_string(Family f)
{
    switch (f) {
    case Family::point_mass:
        return "point_mass";
    case Family::two_point_poisson:
        return "two_point_poisson";
    case Family::symmetric_pair:
        return "symmetric_pair";
    case Family::inline_rows:
        return "inline";
    }
    return "?";
}

Family family_from_string(std::string_view s)
{
    for (auto f : {Family::point_mass, Family::two_point_poisson, Family::symmetric_pair, Family::inline_rows})
        if (to_string(f) == s)
            return f;
    throw invalid_input("unknown array family '" + std::string(s) + "'");
}

std::string_view to_string(Verdict::Kind k)
{
    switch (k) {
    case Verdict::Kind::converges_to:
        return "ConvergesTo";
    case Verdict::Kind::haar_limit:
        return "HaarLimit";
    case Verdict::Kind::inconclusive:
        return "Inconclusive";
    }
    return "?";
}

void ArraySpec::validate() const
{
    if (space == Space::positive && !(tau > 0.0 && std::isfinite(tau)))
        throw invalid_input("tau must be positive on the half-line");
    if (space == Space::circle && !(tau > 0.0 && tau < pi))
        throw invalid_input("tau must lie in (0, pi) on the circle");
    if (space == Space::positive && !(alpha_value > 0.0))
        throw invalid_input("scaling alpha must be positive");
    if (!(params.c >= 0.0))
        throw invalid_input("family parameter c must be non-negative");
    if (family == Family::two_point_poisson && space == Space::positive && !(params.t0 > 0.0))
        throw invalid_input("family parameter t0 must be positive");
    if (family == Family::symmetric_pair && space != Space::circle)
        throw invalid_input("the symmetric_pair family lives on the circle");
    if (family == Family::inline_rows) {
        for (const auto &[n, measures] : inline_rows) {
            if (measures.empty())
                throw invalid_input("inline row " + std::to_string(n) + " is empty");
            for (const auto &m : measures)
                if (m.space() != space)
                    throw invalid_input("inline row " + std::to_string(n) + " mixes spaces");
        }
    }
}

std::vector<AtomicMeasure> ArraySpec::row(long n) const
{
    if (n < 1)
        throw invalid_input("row index must be at least 1");
    const auto count = static_cast<std::size_t>(n);
    const double nd = static_cast<double>(n);
    switch (family) {
    case Family::point_mass: {
        const AtomicMeasure m = space == Space::positive ? point_mass(std::exp(params.c / nd))
                                                         : circle_point_mass(params.c / nd);
        return std::vector<AtomicMeasure>(count, m);
    }
    case Family::two_point_poisson: {
        const double p = params.c / nd;
        if (!(p < 1.0))
            throw invalid_input("two_point_poisson needs n > c (row " + std::to_string(n) + ")");
        const double far = space == Space::positive ? params.t0 : wrap_angle(params.theta);
        const double one = space == Space::positive ? 1.0 : 0.0;
        std::vector<Atom> atoms{{one, 1.0 - p}};
        if (p > 0.0)
            atoms.push_back({far, p});
        return std::vector<AtomicMeasure>(count, AtomicMeasure(space, atoms));
    }
    case Family::symmetric_pair: {
        const double th = params.scale * std::pow(nd, -params.exponent);
        if (!(th >= 0.0 && th < pi))
            throw invalid_input("symmetric_pair angle must lie in [0, pi)");
        return std::vector<AtomicMeasure>(count, AtomicMeasure(Space::circle, {{th, 0.5}, {-th, 0.5}}));
    }
    case Family::inline_rows: {
        auto it = inline_rows.find(n);
        if (it == inline_rows.end())
            throw invalid_input("inline array has no row " + std::to_string(n));
        return it->second;
    }
    }
    return {};
}

double ArraySpec::alpha(long) const { return alpha_value; }

double ArraySpec::lambda_angle(long) const { return lambda_angle_value; }

std::vector<cplx> centering_logs(std::span<const AtomicMeasure> row, double tau)
{
    std::vector<cplx> out;
    out.reserve(row.size());
    for (const auto &nu : row) {
        double acc = 0.0;
        for (const auto &a : nu.atoms()) {
            const double l = nu.space() == Space::circle ? a.position : std::log(a.position);
            if (std::abs(l) < tau)
                acc += a.weight * l;
        }
        out.push_back(nu.space() == Space::circle ? cplx(0.0, acc) : cplx(acc, 0.0));
    }
    return out;
}

std::vector<cplx> centering_constants(std::span<const AtomicMeasure> row, double tau)
{
    auto logs = centering_logs(row, tau);
    for (auto &l : logs)
        l = std::exp(l);
    return logs;
}

std::vector<AtomicMeasure> center_row(std::span<const AtomicMeasure> row, std::span<const cplx> log_b)
{
    if (row.size() != log_b.size())
        throw invalid_input("center_row: one centering constant per row entry required");
    std::vector<AtomicMeasure> out;
    out.reserve(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) {
        const auto &nu = row[k];
        // Consecutive identical entries share one centered measure.
        if (k > 0 && log_b[k] == log_b[k - 1] && nu == row[k - 1]) {
            out.push_back(out.back());
            continue;
        }
        std::vector<Atom> atoms(nu.atoms().begin(), nu.atoms().end());
        for (auto &a : atoms) {
            if (nu.space() == Space::circle)
                a.position = wrap_angle(a.position - log_b[k].imag());
            else
                a.position = std::exp(std::log(a.position) - log_b[k].real());
        }
        out.emplace_back(nu.space(), std::move(atoms));
    }
    return out;
}

FiniteMeasure sigma_n_pos(std::span<const AtomicMeasure> centered)
{
    FiniteMeasureBuilder b(Space::positive);
    for (const auto &nu : centered) {
        if (nu.space() != Space::positive)
            throw invalid_input("sigma_n_pos: half-line row required");
        for (const auto &at : nu.atoms()) {
            const double a = at.position;
            // (t-1)^2/(t^2+1) at t = 1/a equals (1-a)^2/(1+a^2).
            const double factor = (1.0 - a) * (1.0 - a) / (1.0 + a * a);
            const double t = a < 1e-300 ? std::numeric_limits<double>::infinity() : 1.0 / a;
            b.add(t, at.weight * factor);
        }
    }
    return std::move(b).build();
}

FiniteMeasure sigma_n_circ(std::span<const AtomicMeasure> centered)
{
    FiniteMeasureBuilder b(Space::circle);
    for (const auto &nu : centered) {
        if (nu.space() != Space::circle)
            throw invalid_input("sigma_n_circ: circle row required");
        for (const auto &at : nu.atoms()) {
            const double s = std::sin(0.5 * at.position);
            b.add(at.position, at.weight * 2.0 * s * s);
        }
    }
    return std::move(b).build();
}

namespace {

double gamma_pos_centered(std::span<const AtomicMeasure> centered, std::span<const cplx> log_b, double alpha)
{
    double acc = -std::log(alpha);
    for (std::size_t k = 0; k < centered.size(); ++k) {
        double integral = 0.0;
        for (const auto &at : centered[k].atoms()) {
            const double a = at.position;
            // (t^2-1)/(t^2+1) at t = 1/a
            integral += at.weight * (1.0 - a * a) / (1.0 + a * a);
        }
        acc += integral - log_b[k].real();
    }
    return acc;
}

double gamma_circ_centered(std::span<const AtomicMeasure> centered, std::span<const cplx> log_b, double lambda_angle)
{
    double acc = lambda_angle;
    for (std::size_t k = 0; k < centered.size(); ++k) {
        double integral = 0.0;
        for (const auto &at : centered[k].atoms())
            integral += at.weight * std::sin(at.position);
        acc += integral + log_b[k].imag();
    }
    return wrap_angle(acc);
}

} // namespace

double gamma_n_pos(std::span<const AtomicMeasure> row, double alpha, double tau)
{
    if (!(alpha > 0.0))
        throw invalid_input("gamma_n_pos: alpha must be positive");
    const auto logs = centering_logs(row, tau);
    const auto centered = center_row(row, logs);
    return gamma_pos_centered(centered, logs, alpha);
}

double gamma_n_circ(std::span<const AtomicMeasure> row, double lambda_angle, double tau)
{
    const auto logs = centering_logs(row, tau);
    const auto centered = center_row(row, logs);
    return gamma_circ_centered(centered, logs, lambda_angle);
}

double haar_statistic(std::span<const AtomicMeasure> centered) { return sigma_n_circ(centered).total_mass(); }

cplx g_eval(const AtomicMeasure &centered, cplx w)
{
    if (centered.space() != Space::positive)
        throw invalid_input("g_eval: half-line measure required");
    if (w.imag() == 0.0 && w.real() >= 0.0)
        throw invalid_input("g_eval: w must avoid [0, +inf)");
    cplx acc = 0.0;
    for (const auto &at : centered.atoms()) {
        const double a = at.position;
        const double t = 1.0 / a;
        const double shift = (1.0 - a * a) / (1.0 + a * a);
        const double density = (1.0 - a) * (1.0 - a) / (1.0 + a * a);
        acc += at.weight * (shift + (1.0 + t * w) / (w - t) * density);
    }
    return acc;
}

cplx h_eval(const AtomicMeasure &centered, cplx z)
{
    if (centered.space() != Space::circle)
        throw invalid_input("h_eval: circle measure required");
    if (!(std::abs(z) < 1.0))
        throw invalid_input("h_eval: z must lie in the open unit disk");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < centered.size(); ++i) {
        const double w = centered.atoms()[i].weight;
        const double th = centered.atoms()[i].position;
        const cplx t = centered.point(i);
        const double s = std::sin(0.5 * th);
        acc += w * (cplx(0.0, -std::sin(th)) + (1.0 + t * z) / (1.0 - t * z) * (2.0 * s * s));
    }
    return acc;
}

RatioBound g_ratio_bound(std::span<const cplx> test_set)
{
    if (test_set.empty())
        throw invalid_input("g_ratio_bound: empty test set");
    RatioBound r{0.0, std::numeric_limits<double>::infinity(), 0.0};
    for (const auto &w : test_set) {
        if (!(w.real() < 0.0 && w.imag() > 0.0))
            throw invalid_input("g_ratio_bound: test points must lie in the open second quadrant");
        auto visit = [&](cplx k) {
            r.m1 = std::max(r.m1, std::abs(k.real()));
            r.m2 = std::min(r.m2, -k.imag());
        };
        visit(1.0 / w); // t -> 0
        visit(-w);      // t -> inf
        for (int i = 0; i <= 8000; ++i) {
            const double t = std::exp(-40.0 + 0.01 * i);
            visit((1.0 + t * w) / (w - t));
        }
    }
    r.bound = (74.0 + r.m1) / r.m2;
    return r;
}

RatioBound h_ratio_bound(std::span<const cplx> test_set)
{
    if (test_set.empty())
        throw invalid_input("h_ratio_bound: empty test set");
    RatioBound r{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (const auto &z : test_set) {
        if (!(std::abs(z) < 1.0))
            throw invalid_input("h_ratio_bound: test points must lie in the open unit disk");
        for (int i = 0; i < 8192; ++i) {
            const cplx t = std::polar(1.0, 2.0 * pi * i / 8192.0);
            const cplx k = (1.0 + t * z) / (1.0 - t * z);
            r.m1 = std::min(r.m1, k.real());
            r.m2 = std::max(r.m2, std::abs(k.imag()));
        }
    }
    r.bound = (12.0 + r.m2) / r.m1;
    return r;
}

RowDiagnostics diagnose_row(const ArraySpec &spec, long n, double eps)
{
    const auto row = spec.row(n);
    RowDiagnostics d;
    d.n = n;
    d.log_b = centering_logs(row, spec.tau);
    const auto centered = center_row(row, d.log_b);
    if (spec.space == Space::positive) {
        d.sigma = sigma_n_pos(centered);
        d.gamma = gamma_pos_centered(centered, d.log_b, spec.alpha(n));
    } else {
        d.sigma = sigma_n_circ(centered);
        d.gamma = gamma_circ_centered(centered, d.log_b, spec.lambda_angle(n));
        d.haar_stat = d.sigma.total_mass();
    }
    d.infinitesimality = infinitesimality_stat(row, eps);
    return d;
}

bool non_increasing(std::span<const double> values)
{
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] + monotone_slack)
            return false;
    return true;
}

DiagnoseResult diagnose(const ArraySpec &spec, std::span<const long> rows, const DiagnoseOptions &opts)
{
    spec.validate();
    if (rows.size() < 3)
        throw invalid_input("diagnose: the row schedule needs at least 3 entries");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i] <= rows[i - 1])
            throw invalid_input("diagnose: row schedule must be strictly increasing");

    DiagnoseResult result;
    result.rows.resize(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) { result.rows[i] = diagnose_row(spec, rows[i], opts.eps); });

    Verdict &v = result.verdict;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto &prev = result.rows[i - 1];
        const auto &cur = result.rows[i];
        v.sigma_gaps.push_back(weak_distance(prev.sigma, cur.sigma));
        v.gamma_gaps.push_back(spec.space == Space::circle
                                   ? std::abs(std::polar(1.0, cur.gamma) - std::polar(1.0, prev.gamma))
                                   : std::abs(cur.gamma - prev.gamma));
    }

    bool haar = spec.space == Space::circle && result.rows.back().haar_stat >= opts.haar_threshold;
    for (std::size_t i = 1; haar && i < rows.size(); ++i)
        haar = result.rows[i].haar_stat > result.rows[i - 1].haar_stat;

    const bool cauchy = non_increasing(v.sigma_gaps) && non_increasing(v.gamma_gaps)
                        && v.sigma_gaps.back() < opts.cauchy_tol && v.gamma_gaps.back() < opts.cauchy_tol;
    if (haar) {
        v.kind = Verdict::Kind::haar_limit;
    } else if (cauchy) {
        v.kind = Verdict::Kind::converges_to;
        v.gamma = result.rows.back().gamma;
        v.sigma = result.rows.back().sigma;
    }
    return result;
}

} // namespace freemult
