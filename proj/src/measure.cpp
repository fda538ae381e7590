#include "freemult/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "freemult/errors.hpp"

namespace freemult {

std::string_view to_string(Space s) { return s == Space::positive ? "positive" : "circle"; }

Space space_from_string(std::string_view s)
{
    if (s == "positive")
        return Space::positive;
    if (s == "circle")
        return Space::circle;
    throw invalid_input("unknown space '" + std::string(s) + "' (expected \"positive\" or \"circle\")");
}

double wrap_angle(double theta)
{
    double r = theta - 2.0 * pi * std::floor((theta + pi) / (2.0 * pi));
    if (r >= pi)
        r -= 2.0 * pi;
    if (r < -pi)
        r += 2.0 * pi;
    return r;
}

namespace {

bool same_position(Space space, double a, double b)
{
    if (space == Space::circle)
        return std::abs(a - b) <= merge_tolerance;
    return std::abs(a - b) <= merge_tolerance * std::max(std::abs(a), std::abs(b));
}

// Sorts and merges coincident atoms in place. On the circle an atom just below
// pi is merged into one at -pi.
void canonicalize(Space space, std::vector<Atom> &atoms)
{
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom &x, const Atom &y) { return x.position < y.position; });
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (const auto &a : atoms) {
        if (!out.empty() && same_position(space, out.back().position, a.position))
            out.back().weight += a.weight;
        else
            out.push_back(a);
    }
    if (space == Space::circle && out.size() > 1
        && same_position(space, out.back().position, out.front().position + 2.0 * pi)) {
        out.front().weight += out.back().weight;
        out.pop_back();
    }
    atoms = std::move(out);
}

void check_position(Space space, double x)
{
    if (!std::isfinite(x))
        throw invalid_input("atom position must be finite");
    if (space == Space::positive && x <= 0.0)
        throw invalid_input("half-line atom position must be positive, got " + std::to_string(x));
    if (space == Space::circle && (x < -pi || x >= pi))
        throw invalid_input("circle angle must lie in [-pi, pi), got " + std::to_string(x));
}

} // namespace

AtomicMeasure::AtomicMeasure(Space space, std::vector<Atom> atoms) : space_(space), atoms_(std::move(atoms))
{
    if (atoms_.empty())
        throw invalid_input("a probability measure needs at least one atom");
    double total = 0.0;
    for (const auto &a : atoms_) {
        check_position(space_, a.position);
        if (!(a.weight > 0.0) || !std::isfinite(a.weight))
            throw invalid_input("atom weights must be positive and finite");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw invalid_input("atom weights sum to " + std::to_string(total) + ", expected 1");
    if (total != 1.0)
        for (auto &a : atoms_)
            a.weight /= total;
    canonicalize(space_, atoms_);
}

cplx AtomicMeasure::point(std::size_t i) const
{
    const double x = atoms_[i].position;
    return space_ == Space::circle ? std::polar(1.0, x) : cplx(x, 0.0);
}

AtomicMeasure make_measure(Space space, std::vector<Atom> atoms) { return AtomicMeasure(space, std::move(atoms)); }

AtomicMeasure point_mass(double t) { return AtomicMeasure(Space::positive, {{t, 1.0}}); }

AtomicMeasure circle_point_mass(double theta) { return AtomicMeasure(Space::circle, {{wrap_angle(theta), 1.0}}); }

namespace {

std::vector<Atom> product_atoms(const AtomicMeasure &mu, const AtomicMeasure &nu)
{
    if (mu.space() != nu.space())
        throw invalid_input("classical_multconv: measures live on different spaces");
    std::vector<Atom> atoms;
    atoms.reserve(mu.size() * nu.size());
    for (const auto &a : mu.atoms())
        for (const auto &b : nu.atoms()) {
            const double pos = mu.space() == Space::circle ? wrap_angle(a.position + b.position)
                                                           : a.position * b.position;
            atoms.push_back({pos, a.weight * b.weight});
        }
    return atoms;
}

} // namespace

AtomicMeasure classical_multconv(const AtomicMeasure &mu, const AtomicMeasure &nu)
{
    return AtomicMeasure(mu.space(), product_atoms(mu, nu));
}

PrunedProduct classical_multconv_pruned(const AtomicMeasure &mu, const AtomicMeasure &nu, double prune_below)
{
    auto atoms = product_atoms(mu, nu);
    canonicalize(mu.space(), atoms);
    double pruned = 0.0;
    std::erase_if(atoms, [&](const Atom &a) {
        if (a.weight >= prune_below)
            return false;
        pruned += a.weight;
        return true;
    });
    if (atoms.empty())
        throw numerical_error("classical_multconv_pruned: every atom fell below the pruning threshold");
    double kept = 0.0;
    for (const auto &a : atoms)
        kept += a.weight;
    for (auto &a : atoms)
        a.weight /= kept;
    return {AtomicMeasure(mu.space(), std::move(atoms)), pruned};
}

AtomicMeasure pushforward(const AtomicMeasure &nu, const Pushforward &map)
{
    std::vector<Atom> atoms(nu.atoms().begin(), nu.atoms().end());
    switch (map.kind) {
    case Pushforward::Kind::reciprocal:
        if (nu.space() == Space::circle)
            for (auto &a : atoms)
                a.position = wrap_angle(-a.position);
        else
            for (auto &a : atoms)
                a.position = 1.0 / a.position;
        break;
    case Pushforward::Kind::scale_by:
        if (nu.space() != Space::positive)
            throw invalid_input("pushforward: scale_by applies to half-line measures");
        if (!(map.parameter > 0.0))
            throw invalid_input("pushforward: scale factor must be positive");
        for (auto &a : atoms)
            a.position /= map.parameter;
        break;
    case Pushforward::Kind::rotate_by:
        if (nu.space() != Space::circle)
            throw invalid_input("pushforward: rotate_by applies to circle measures");
        for (auto &a : atoms)
            a.position = wrap_angle(a.position - map.parameter);
        break;
    }
    return AtomicMeasure(nu.space(), std::move(atoms));
}

cplx moment(const AtomicMeasure &nu, int k)
{
    if (k < 0)
        throw invalid_input("moment: order must be non-negative");
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const double w = nu.atoms()[i].weight;
        if (nu.space() == Space::circle)
            sum += w * std::polar(1.0, k * nu.atoms()[i].position);
        else
            sum += w * std::pow(nu.atoms()[i].position, k);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// FiniteMeasure

FiniteMeasure::FiniteMeasure(Space space, std::vector<Atom> atoms, double mass_at_zero, double mass_at_infinity)
    : space_(space), atoms_(std::move(atoms)), mass_at_zero_(mass_at_zero), mass_at_infinity_(mass_at_infinity)
{
    if (!(mass_at_zero_ >= 0.0) || !(mass_at_infinity_ >= 0.0) || !std::isfinite(mass_at_zero_)
        || !std::isfinite(mass_at_infinity_))
        throw invalid_input("endpoint masses must be finite and non-negative");
    if (space_ == Space::circle && (mass_at_zero_ != 0.0 || mass_at_infinity_ != 0.0))
        throw invalid_input("circle measures carry no endpoint masses");
    for (const auto &a : atoms_) {
        if (!(a.weight > 0.0) || !std::isfinite(a.weight))
            throw invalid_input("atom weights must be positive and finite");
        if (space_ == Space::positive && a.position == 0.0)
            continue;
        if (space_ == Space::positive && a.position == std::numeric_limits<double>::infinity())
            continue;
        check_position(space_, a.position);
    }
    // Explicit endpoint atoms move into the dedicated fields.
    std::erase_if(atoms_, [&](const Atom &a) {
        if (space_ != Space::positive)
            return false;
        if (a.position == 0.0) {
            mass_at_zero_ += a.weight;
            return true;
        }
        if (std::isinf(a.position)) {
            mass_at_infinity_ += a.weight;
            return true;
        }
        return false;
    });
    canonicalize(space_, atoms_);
}

double FiniteMeasure::total_mass() const
{
    double m = mass_at_zero_ + mass_at_infinity_;
    for (const auto &a : atoms_)
        m += a.weight;
    return m;
}

FiniteMeasure FiniteMeasure::operator+(const FiniteMeasure &other) const
{
    if (space_ != other.space_)
        throw invalid_input("cannot add measures on different spaces");
    std::vector<Atom> atoms = atoms_;
    atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
    return FiniteMeasure(space_, std::move(atoms), mass_at_zero_ + other.mass_at_zero_,
                         mass_at_infinity_ + other.mass_at_infinity_);
}

FiniteMeasure FiniteMeasure::scaled(double c) const
{
    if (!(c >= 0.0))
        throw invalid_input("measures can only be scaled by non-negative factors");
    if (c == 0.0)
        return FiniteMeasure(space_);
    std::vector<Atom> atoms = atoms_;
    for (auto &a : atoms)
        a.weight *= c;
    return FiniteMeasure(space_, std::move(atoms), c * mass_at_zero_, c * mass_at_infinity_);
}

void FiniteMeasureBuilder::add(double position, double weight)
{
    if (weight == 0.0)
        return;
    if (space_ == Space::positive && position == 0.0)
        at_zero_ += weight;
    else if (space_ == Space::positive && std::isinf(position))
        at_infinity_ += weight;
    else
        atoms_.push_back({position, weight});
}

FiniteMeasure FiniteMeasureBuilder::build() &&
{
    return FiniteMeasure(space_, std::move(atoms_), at_zero_, at_infinity_);
}

// ---------------------------------------------------------------------------
// Bounded-Lipschitz distance
//
// For a signed atomic measure sum_j c_j delta_{x_j} the dual norm is the value
// of max sum_j c_j f_j subject to |f_j| <= 1 and |f_j - f_{j+1}| <= gap_j
// (consecutive constraints suffice for a path metric). The value function
// V_j(f) of the first j points is concave piecewise linear in f, so the
// dynamic programme below is exact.

namespace {

struct Knot {
    double f;
    double value;
};

using ConcavePL = std::vector<Knot>;

double eval(const ConcavePL &v, double f)
{
    if (v.size() == 1)
        return v.front().value;
    if (f <= v.front().f)
        return v.front().value;
    if (f >= v.back().f)
        return v.back().value;
    auto it = std::lower_bound(v.begin(), v.end(), f, [](const Knot &k, double x) { return k.f < x; });
    const Knot &hi = *it;
    const Knot &lo = *(it - 1);
    if (hi.f == lo.f)
        return std::max(hi.value, lo.value);
    const double s = (f - lo.f) / (hi.f - lo.f);
    return lo.value + s * (hi.value - lo.value);
}

// Restricts a PL function given on [v.front().f, v.back().f] to [lo, hi].
ConcavePL clip(const ConcavePL &v, double lo, double hi)
{
    lo = std::max(lo, v.front().f);
    hi = std::min(hi, v.back().f);
    ConcavePL out;
    out.push_back({lo, eval(v, lo)});
    for (const auto &k : v)
        if (k.f > lo && k.f < hi)
            out.push_back(k);
    if (hi > lo)
        out.push_back({hi, eval(v, hi)});
    return out;
}

// U(f) = max_{|g - f| <= d} V(g), then clipped to [-1, 1].
ConcavePL dilate(const ConcavePL &v, double d)
{
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i].value > v[arg].value)
            arg = i;
    ConcavePL out;
    for (std::size_t i = 0; i < arg; ++i)
        out.push_back({v[i].f - d, v[i].value});
    out.push_back({v[arg].f - d, v[arg].value});
    out.push_back({v[arg].f + d, v[arg].value});
    for (std::size_t i = arg + 1; i < v.size(); ++i)
        out.push_back({v[i].f + d, v[i].value});
    return clip(out, -1.0, 1.0);
}

void add_linear(ConcavePL &v, double c)
{
    for (auto &k : v)
        k.value += c * k.f;
}

double max_value(const ConcavePL &v)
{
    double m = -std::numeric_limits<double>::infinity();
    for (const auto &k : v)
        m = std::max(m, k.value);
    return m;
}

struct SignedPoint {
    double x;
    double c;
};

std::vector<SignedPoint> signed_difference(const FiniteMeasure &a, const FiniteMeasure &b)
{
    std::vector<SignedPoint> pts;
    const bool circle = a.space() == Space::circle;
    auto chart = [&](double t) { return circle ? t : t / (1.0 + t); };
    for (const auto &at : a.atoms())
        pts.push_back({chart(at.position), at.weight});
    for (const auto &at : b.atoms())
        pts.push_back({chart(at.position), -at.weight});
    if (!circle) {
        pts.push_back({0.0, a.mass_at_zero() - b.mass_at_zero()});
        pts.push_back({1.0, a.mass_at_infinity() - b.mass_at_infinity()});
    }
    std::sort(pts.begin(), pts.end(), [](const SignedPoint &p, const SignedPoint &q) { return p.x < q.x; });
    std::vector<SignedPoint> merged;
    for (const auto &p : pts) {
        if (!merged.empty() && merged.back().x == p.x)
            merged.back().c += p.c;
        else
            merged.push_back(p);
    }
    return merged;
}

// Chain DP; first point pinned to [lo, hi].
ConcavePL chain_value(const std::vector<SignedPoint> &pts, double lo, double hi)
{
    ConcavePL v = lo == hi ? ConcavePL{{lo, 0.0}} : ConcavePL{{lo, 0.0}, {hi, 0.0}};
    add_linear(v, pts[0].c);
    for (std::size_t j = 1; j < pts.size(); ++j) {
        v = dilate(v, pts[j].x - pts[j - 1].x);
        add_linear(v, pts[j].c);
    }
    return v;
}

} // namespace

double weak_distance(const FiniteMeasure &a, const FiniteMeasure &b)
{
    if (a.space() != b.space())
        throw invalid_input("weak_distance: measures live on different spaces");
    const auto pts = signed_difference(a, b);
    if (pts.empty())
        return 0.0;
    if (a.space() == Space::positive)
        return std::max(0.0, max_value(chain_value(pts, -1.0, 1.0)));

    // Circle: pin f at the first point to phi; the wrap-around constraint
    // then limits the last point. The pinned value W(phi) is concave.
    const double wrap = 2.0 * pi - (pts.back().x - pts.front().x);
    auto pinned = [&](double phi) {
        ConcavePL v = chain_value(pts, phi, phi);
        return max_value(clip(v, phi - wrap, phi + wrap));
    };
    double lo = -1.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (pinned(m1) < pinned(m2))
            lo = m1;
        else
            hi = m2;
    }
    double best = std::max({pinned(-1.0), pinned(1.0), pinned(0.5 * (lo + hi))});
    return std::max(0.0, best);
}

double infinitesimality_stat(std::span<const AtomicMeasure> row, double eps)
{
    if (row.empty())
        throw invalid_input("infinitesimality_stat: empty row");
    if (!(eps > 0.0))
        throw invalid_input("infinitesimality_stat: eps must be positive");
    double worst = 0.0;
    for (const auto &nu : row) {
        double far = 0.0;
        for (const auto &a : nu.atoms()) {
            const double dev = nu.space() == Space::circle ? std::abs(a.position) : std::abs(a.position - 1.0);
            if (dev >= eps)
                far += a.weight;
        }
        worst = std::max(worst, far);
    }
    return worst;
}

// ---------------------------------------------------------------------------

GridSpec GridSpec::interval(double lo, double hi, int n)
{
    if (n < 1 || !(lo > -1.0) || !(hi < 0.0) || !(lo <= hi))
        throw invalid_input("grid interval must satisfy -1 < lo <= hi < 0 with at least one point");
    GridSpec g{Space::positive, {}};
    for (int i = 0; i < n; ++i)
        g.points.emplace_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1), 0.0);
    return g;
}

GridSpec GridSpec::default_positive() { return interval(-0.45, -0.05, 16); }

GridSpec GridSpec::disk(double r, int n)
{
    if (!(r >= 0.0 && r < 1.0) || n < 0)
        throw invalid_input("disk grid needs 0 <= r < 1");
    GridSpec g{Space::circle, {cplx(0.0, 0.0)}};
    for (int i = 0; i < n; ++i)
        g.points.push_back(std::polar(r, 2.0 * pi * i / n));
    return g;
}

void validate(const GridSpec &grid, double circle_radius)
{
    if (grid.points.empty())
        throw invalid_input("grid is empty");
    for (const auto &z : grid.points) {
        if (grid.space == Space::positive) {
            if (z.imag() != 0.0 || !(z.real() > -1.0 && z.real() < 0.0))
                throw invalid_input("half-line grid points must be real and lie in (-1, 0)");
        } else if (!(std::abs(z) < 1.0 && std::abs(z) <= circle_radius)) {
            throw invalid_input("circle grid points must lie in the open unit disk and within the given radius");
        }
    }
}

} // namespace freemult
