#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "freemult/freeconv.hpp"
#include "freemult/measure.hpp"

namespace freemult {

struct MCConfig {
    int dim = 512;
    int samples = 200;
    std::uint64_t seed = 0;
    Space space = Space::positive;
    int moments = 4;
    // Half-line only: conjugate with Haar unitary instead of Haar orthogonal
    // matrices. The complex ensemble has O(1/d^2) finite-size bias against
    // O(1/d) for the real one, at about four times the cost.
    bool complex_unitary = false;

    void validate() const;
};

struct MCEstimate {
    MomentVector mean;
    // Standard error of each moment estimate (modulus of the complex spread).
    std::vector<double> std_error;
    int dim = 0;
    int samples = 0;
};

// Atom multiplicities summing to d, by largest-remainder rounding of w_i d.
// Ties go to the lower index.
std::vector<int> atom_multiplicities(const AtomicMeasure &nu, int d);

// Deterministic generator for sample `index` of a run seeded with `seed`.
std::uint64_t sample_stream_seed(std::uint64_t seed, std::uint64_t index);

// E (1/d) tr((A^{1/2} U B U^* A^{1/2})^k) with A, B diagonal.
MCEstimate rmt_oracle_pos(const AtomicMeasure &mu, const AtomicMeasure &nu, const MCConfig &cfg);

// E (1/d) tr((U_A W U_B W^*)^k) with U_A, U_B diagonal unitary.
MCEstimate rmt_oracle_circ(const AtomicMeasure &mu, const AtomicMeasure &nu, const MCConfig &cfg);

// Moments of lambda * prod_k W_k D_k W_k^* for a whole circle row. Each factor
// differs from a multiple of the identity in few eigenvalues, so it is applied
// as a low-rank update.
MCEstimate rmt_oracle_circ_row(std::span<const AtomicMeasure> row, double lambda_angle, const MCConfig &cfg);

} // namespace freemult
