#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "freemult/measure.hpp"

namespace freemult {

enum class Family { point_mass, two_point_poisson, symmetric_pair, inline_rows };

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

// Parameters of the built-in row generators. Row n has k_n = n entries:
//   point_mass         delta_{exp(c/n)} (half-line) or delta_{e^{i c/n}} (circle)
//   two_point_poisson  (1 - c/n) delta_1 + (c/n) delta_{t0} or delta_{e^{i theta}}
//   symmetric_pair     (delta_{e^{i th}} + delta_{e^{-i th}}) / 2, th = scale * n^{-exponent}
struct FamilyParams {
    double c = 1.0;
    double t0 = 2.0;
    double theta = pi / 3.0;
    double exponent = 0.25;
    double scale = 1.0;
};

// A triangular array: a row generator, the scaling sequence, the centering
// window tau and a default schedule of row indices.
struct ArraySpec {
    Space space = Space::positive;
    Family family = Family::point_mass;
    FamilyParams params;
    std::map<long, std::vector<AtomicMeasure>> inline_rows;
    double tau = 1.0;
    // Constant scaling sequences: alpha_n on the half-line, lambda_n = e^{i angle}
    // on the circle.
    double alpha_value = 1.0;
    double lambda_angle_value = 0.0;
    std::vector<long> rows;

    std::vector<AtomicMeasure> row(long n) const;
    double alpha(long n) const;
    double lambda_angle(long n) const;

    void validate() const;
};

// log b for each row entry: real on the half-line, i * arg b on the circle.
// Only atoms with |log t| < tau (|arg t| < tau) enter; an empty window gives 0.
std::vector<cplx> centering_logs(std::span<const AtomicMeasure> row, double tau);
// b itself: positive reals on the half-line, unit complex numbers on the circle.
std::vector<cplx> centering_constants(std::span<const AtomicMeasure> row, double tau);

// nu_k^o(t) = nu_k(b_k t): atom a moves to a / b_k. Takes the logs of b.
std::vector<AtomicMeasure> center_row(std::span<const AtomicMeasure> row, std::span<const cplx> log_b);

// sum_k ((t - 1)^2 / (t^2 + 1)) dnu_k^o(1/t) on [0, +inf].
FiniteMeasure sigma_n_pos(std::span<const AtomicMeasure> centered);
// sum_k (1 - Re t) dnu_k^o(t) on the circle.
FiniteMeasure sigma_n_circ(std::span<const AtomicMeasure> centered);

double gamma_n_pos(std::span<const AtomicMeasure> row, double alpha, double tau);
// Representative in [-pi, pi).
double gamma_n_circ(std::span<const AtomicMeasure> row, double lambda_angle, double tau);

// sum_k int (1 - Re t) dnu_k^o(t).
double haar_statistic(std::span<const AtomicMeasure> centered);

// g(w) = int (t^2-1)/(t^2+1) dnu^o(1/t) + int [(1+tw)/(w-t)] (t-1)^2/(t^2+1) dnu^o(1/t),
// w off [0, +inf).
cplx g_eval(const AtomicMeasure &centered, cplx w);
// h(z) = -i int Im t dnu^o + int ((1+tz)/(1-tz)) (1 - Re t) dnu^o, |z| < 1.
cplx h_eval(const AtomicMeasure &centered, cplx z);

// Constants of the ratio bounds |Re g| <= M |Im g| and |Im h| <= M Re h on a
// compact test set, computed over a dense panel of t.
struct RatioBound {
    double m1 = 0.0;
    double m2 = 0.0;
    double bound = 0.0;
};
// Test set inside the open second quadrant; M = (74 + M1) / M2.
RatioBound g_ratio_bound(std::span<const cplx> test_set);
// Test set inside the unit disk; M = (12 + M2) / M1.
RatioBound h_ratio_bound(std::span<const cplx> test_set);

struct RowDiagnostics {
    long n = 0;
    std::vector<cplx> log_b;
    FiniteMeasure sigma;
    double gamma = 0.0;
    double haar_stat = 0.0; // circle only
    double infinitesimality = 0.0;
};

RowDiagnostics diagnose_row(const ArraySpec &spec, long n, double eps = 0.1);

struct DiagnoseOptions {
    double cauchy_tol = 1e-2;
    double haar_threshold = 10.0;
    double eps = 0.1;
};

// Absolute slack under which successive values count as non-increasing;
// absorbs rounding noise on sequences that are exactly constant.
inline constexpr double monotone_slack = 1e-12;

bool non_increasing(std::span<const double> values);

struct Verdict {
    enum class Kind { converges_to, haar_limit, inconclusive };
    Kind kind = Kind::inconclusive;
    double gamma = 0.0;
    FiniteMeasure sigma;
    std::vector<double> sigma_gaps; // weak distance between consecutive rows
    std::vector<double> gamma_gaps; // |gamma_n - gamma_m| or |e^{i gamma_n} - e^{i gamma_m}|
};

std::string_view to_string(Verdict::Kind k);

struct DiagnoseResult {
    std::vector<RowDiagnostics> rows;
    Verdict verdict;
};

// Finite-n judgment: ConvergesTo when the gaps shrink monotonically below
// cauchy_tol, HaarLimit when the circle statistic increases strictly and ends
// above haar_threshold.
DiagnoseResult diagnose(const ArraySpec &spec, std::span<const long> rows, const DiagnoseOptions &opts = {});

} // namespace freemult
