#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace freemult {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Positions closer than this (relative on the half-line, absolute in angle on
// the circle) are treated as the same atom.
inline constexpr double merge_tolerance = 1e-12;

enum class Space { positive, circle };

std::string_view to_string(Space s);
Space space_from_string(std::string_view s);

// position is t > 0 on the half-line or an angle in [-pi, pi) on the circle.
struct Atom {
    double position = 0.0;
    double weight = 0.0;

    friend bool operator==(const Atom &, const Atom &) = default;
};

// Reduces an angle to the principal range [-pi, pi).
double wrap_angle(double theta);

// Probability measure with finitely many atoms, stored sorted by position with
// coincident atoms merged. Construction validates; instances are immutable.
class AtomicMeasure {
public:
    AtomicMeasure(Space space, std::vector<Atom> atoms);

    Space space() const { return space_; }
    std::span<const Atom> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    // e^{i theta} on the circle, t on the half-line.
    cplx point(std::size_t i) const;

    double min_position() const { return atoms_.front().position; }
    double max_position() const { return atoms_.back().position; }

    friend bool operator==(const AtomicMeasure &, const AtomicMeasure &) = default;

private:
    Space space_;
    std::vector<Atom> atoms_;
};

// Validating constructor; duplicate positions are merged by summing weights.
AtomicMeasure make_measure(Space space, std::vector<Atom> atoms);

AtomicMeasure point_mass(double t);
AtomicMeasure circle_point_mass(double theta);

// Distribution of the product of independent variables (angle sums on the
// circle). Exact atom bookkeeping.
AtomicMeasure classical_multconv(const AtomicMeasure &mu, const AtomicMeasure &nu);

struct PrunedProduct {
    AtomicMeasure measure;
    double pruned_mass = 0.0;
};

// As classical_multconv, but atoms lighter than prune_below are dropped and the
// rest renormalized. Used to keep long row products tractable.
PrunedProduct classical_multconv_pruned(const AtomicMeasure &mu, const AtomicMeasure &nu,
                                        double prune_below);

struct Pushforward {
    enum class Kind { reciprocal, scale_by, rotate_by };
    Kind kind = Kind::reciprocal;
    // b > 0 for scale_by (atom a goes to a / b); an angle for rotate_by
    // (atom e^{i theta} goes to e^{i (theta - b)}).
    double parameter = 1.0;

    static Pushforward reciprocal() { return {Kind::reciprocal, 1.0}; }
    static Pushforward scale_by(double b) { return {Kind::scale_by, b}; }
    static Pushforward rotate_by(double angle) { return {Kind::rotate_by, angle}; }
};

AtomicMeasure pushforward(const AtomicMeasure &nu, const Pushforward &map);

// sum_i w_i t_i^k; real on the half-line.
cplx moment(const AtomicMeasure &nu, int k);

// Finite positive measure on [0, +inf] (with explicit endpoint masses) or on
// the circle. Not normalized; the zero measure has no atoms.
class FiniteMeasure {
public:
    FiniteMeasure() = default;
    explicit FiniteMeasure(Space space) : space_(space) {}
    FiniteMeasure(Space space, std::vector<Atom> atoms, double mass_at_zero = 0.0,
                  double mass_at_infinity = 0.0);

    Space space() const { return space_; }
    std::span<const Atom> atoms() const { return atoms_; }
    double mass_at_zero() const { return mass_at_zero_; }
    double mass_at_infinity() const { return mass_at_infinity_; }
    double total_mass() const;
    bool is_zero() const { return atoms_.empty() && mass_at_zero_ == 0.0 && mass_at_infinity_ == 0.0; }

    FiniteMeasure operator+(const FiniteMeasure &other) const;
    FiniteMeasure scaled(double c) const;

    friend bool operator==(const FiniteMeasure &, const FiniteMeasure &) = default;

private:
    Space space_ = Space::positive;
    std::vector<Atom> atoms_;
    double mass_at_zero_ = 0.0;
    double mass_at_infinity_ = 0.0;
};

// Accumulates weighted points and produces a canonical FiniteMeasure.
// Zero weights are skipped; half-line positions of exactly 0 or +inf are
// routed to the endpoint masses.
class FiniteMeasureBuilder {
public:
    explicit FiniteMeasureBuilder(Space space) : space_(space) {}
    void add(double position, double weight);
    FiniteMeasure build() &&;

private:
    Space space_;
    std::vector<Atom> atoms_;
    double at_zero_ = 0.0;
    double at_infinity_ = 0.0;
};

// Bounded-Lipschitz dual distance. The compactified half-line is charted to
// [0, 1] by t -> t / (1 + t); the circle carries the arc-length metric.
double weak_distance(const FiniteMeasure &a, const FiniteMeasure &b);

// Half-line: max_k nu_k({|t - 1| >= eps}); circle: max_k nu_k({|arg t| >= eps}).
double infinitesimality_stat(std::span<const AtomicMeasure> row, double eps);

// Points of (0, 1) on the half-line or of the closed disk |z| <= r on the circle.
struct GridSpec {
    Space space = Space::positive;
    std::vector<cplx> points;

    // n points equally spaced in [lo, hi], -1 < lo < hi < 0.
    static GridSpec interval(double lo, double hi, int n);
    // The default half-line grid: 16 points in [-0.45, -0.05].
    static GridSpec default_positive();
    // n points on the circle |z| = r together with the origin.
    static GridSpec disk(double r, int n);
};

// Circle points must lie in the open unit disk and within circle_radius.
void validate(const GridSpec &grid, double circle_radius = 1.0);

} // namespace freemult
