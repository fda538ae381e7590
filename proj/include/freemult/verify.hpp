#pragma once

#include <span>
#include <string>
#include <vector>

#include "freemult/arrays.hpp"
#include "freemult/measure.hpp"

namespace freemult {

struct VerificationRow {
    long n = 0;
    double discrepancy = 0.0;
    double haar_stat = 0.0;
    double first_moment_modulus = 0.0;
    // Mass dropped while forming classical row products.
    double pruned_mass = 0.0;
    bool below_tol = false;
};

struct VerificationReport {
    std::string scenario;
    std::vector<VerificationRow> rows;
    bool monotone = false;
    double final_discrepancy = 0.0;
    double tol = 0.0;
    bool pass = false;
    double runtime_seconds = 0.0;
};

inline constexpr int default_circle_order = 8;
inline constexpr double classical_prune_weight = 1e-14;

// D_n = sup over the grid of |-log alpha_n + sum_k log S_k(w) - v_{gamma_n,sigma_n}(w)|.
VerificationReport verify_pos(const ArraySpec &spec, std::span<const long> rows, const GridSpec &grid,
                              double tol);

// D_n = max coefficient deviation up to order N between (1/lambda_n) prod_k Sigma_k
// and exp(u_{gamma_n,sigma_n}).
VerificationReport verify_circ(const ArraySpec &spec, std::span<const long> rows, int order, double tol);

// The row statistic must increase strictly and end at or above haar_threshold,
// and |first moment of the row product| = 1 / |prod_k Sigma_k(0)| must decrease
// strictly and end below tol. The discrepancy column holds |m_1|.
VerificationReport verify_haar(const ArraySpec &spec, std::span<const long> rows, double tol = 1e-2,
                               double haar_threshold = 10.0);

// Default s-panel: 61 points on [-3, 3].
std::vector<double> default_s_panel();

// D_n = sup over the s-panel of |Phi(classical row product with delta_alpha)(s)
// - Phi of the classical law attached to (gamma_n, sigma_n)|.
VerificationReport corollary34_check(const ArraySpec &spec, std::span<const long> rows,
                                     std::span<const double> s_panel, double tol);

// "monotone non-increasing AND final < tol"; fills monotone, final and pass.
void finalize(VerificationReport &report);

// Header plus one line per row: n,D_n,haarStat,m1Modulus,prunedMass,belowTol.
std::string to_csv(const VerificationReport &report);

} // namespace freemult
