#include "freemult/json_io.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "freemult/errors.hpp"

namespace freemult {

namespace {

[[noreturn]] void fail(const std::string &what) { throw invalid_input(what); }

double get_number(const json &j, const char *key)
{
    if (!j.contains(key))
        fail(std::string("missing field '") + key + "'");
    if (!j.at(key).is_number())
        fail(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

double get_number_or(const json &j, const char *key, double fallback)
{
    return j.contains(key) ? get_number(j, key) : fallback;
}

void require_object(const json &j, const char *what)
{
    if (!j.is_object())
        fail(std::string(what) + " must be a JSON object");
}

Space get_space(const json &j)
{
    if (!j.contains("space") || !j.at("space").is_string())
        fail("missing string field 'space'");
    return space_from_string(j.at("space").get<std::string>());
}

std::vector<Atom> atoms_from_json(const json &j, Space space)
{
    if (!j.contains("atoms") || !j.at("atoms").is_array())
        fail("missing array field 'atoms'");
    const char *key = space == Space::circle ? "theta" : "t";
    std::vector<Atom> atoms;
    for (const auto &a : j.at("atoms")) {
        require_object(a, "atom");
        atoms.push_back({get_number(a, key), get_number(a, "w")});
    }
    return atoms;
}

json atoms_to_json(std::span<const Atom> atoms, Space space)
{
    const char *key = space == Space::circle ? "theta" : "t";
    json arr = json::array();
    for (const auto &a : atoms)
        arr.push_back({{key, a.position}, {"w", a.weight}});
    return arr;
}

long get_row_index(const json &v)
{
    if (!v.is_number())
        fail("row indices must be numbers");
    const double x = v.get<double>();
    if (!(x >= 1.0 && x <= 1e9) || std::floor(x) != x)
        fail("row indices must be integers in [1, 1e9]");
    return static_cast<long>(x);
}

} // namespace

json read_json_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        fail("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        fail("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

AtomicMeasure atomic_measure_from_json(const json &j)
{
    require_object(j, "measure");
    const Space space = get_space(j);
    if (get_number_or(j, "massAtZero", 0.0) != 0.0 || get_number_or(j, "massAtInfinity", 0.0) != 0.0)
        fail("probability measures cannot charge 0 or +inf");
    return AtomicMeasure(space, atoms_from_json(j, space));
}

json to_json(const AtomicMeasure &nu)
{
    return {{"space", std::string(to_string(nu.space()))}, {"atoms", atoms_to_json(nu.atoms(), nu.space())}};
}

FiniteMeasure finite_measure_from_json(const json &j, Space fallback)
{
    require_object(j, "measure");
    const Space space = j.contains("space") ? get_space(j) : fallback;
    const double at_zero = get_number_or(j, "massAtZero", 0.0);
    const double at_inf = get_number_or(j, "massAtInfinity", 0.0);
    if (space == Space::circle && (at_zero != 0.0 || at_inf != 0.0))
        fail("circle measures have no endpoint masses");
    std::vector<Atom> atoms;
    if (j.contains("atoms"))
        atoms = atoms_from_json(j, space);
    return FiniteMeasure(space, std::move(atoms), at_zero, at_inf);
}

json to_json(const FiniteMeasure &m)
{
    json j{{"space", std::string(to_string(m.space()))}, {"atoms", atoms_to_json(m.atoms(), m.space())}};
    if (m.space() == Space::positive) {
        j["massAtZero"] = m.mass_at_zero();
        j["massAtInfinity"] = m.mass_at_infinity();
    }
    return j;
}

bool is_classical_params(const json &j) { return j.is_object() && (j.contains("lambda") || j.contains("rho")); }

bool is_circle_params(const json &j)
{
    require_object(j, "parameters");
    if (j.contains("haar") && j.at("haar").is_boolean() && j.at("haar").get<bool>())
        return true;
    return j.contains("sigma") && j.at("sigma").is_object() && j.at("sigma").contains("space")
           && j.at("sigma").at("space") == "circle";
}

FreeIdPosParams free_pos_params_from_json(const json &j)
{
    require_object(j, "parameters");
    FreeIdPosParams p;
    p.gamma = get_number(j, "gamma");
    if (j.contains("sigma"))
        p.sigma = finite_measure_from_json(j.at("sigma"), Space::positive);
    if (p.sigma.space() != Space::positive)
        fail("half-line parameters need sigma on [0, +inf]");
    return p;
}

FreeIdCircParams free_circ_params_from_json(const json &j)
{
    require_object(j, "parameters");
    if (j.contains("haar")) {
        if (!j.at("haar").is_boolean())
            fail("field 'haar' must be a boolean");
        if (j.at("haar").get<bool>())
            return FreeIdCircParams::haar_measure();
    }
    FiniteMeasure sigma(Space::circle);
    if (j.contains("sigma"))
        sigma = finite_measure_from_json(j.at("sigma"), Space::circle);
    return FreeIdCircParams::make(get_number(j, "gamma"), std::move(sigma));
}

ClassicalIdParams classical_params_from_json(const json &j)
{
    require_object(j, "parameters");
    ClassicalIdParams q;
    q.lambda = get_number(j, "lambda");
    if (j.contains("rho"))
        q.rho = finite_measure_from_json(j.at("rho"), Space::positive);
    if (q.rho.space() != Space::positive)
        fail("rho must live on the half-line");
    return q;
}

json to_json(const FreeIdPosParams &p) { return {{"gamma", p.gamma}, {"sigma", to_json(p.sigma)}}; }

json to_json(const FreeIdCircParams &p)
{
    if (p.haar)
        return {{"haar", true}};
    return {{"gamma", p.gamma}, {"sigma", to_json(p.sigma)}, {"haar", false}};
}

json to_json(const ClassicalIdParams &p) { return {{"lambda", p.lambda}, {"rho", to_json(p.rho)}}; }

ArraySpec array_spec_from_json(const json &j)
{
    require_object(j, "array spec");
    ArraySpec spec;
    spec.space = get_space(j);
    if (!j.contains("family") || !j.at("family").is_string())
        fail("missing string field 'family'");
    spec.family = family_from_string(j.at("family").get<std::string>());
    spec.tau = get_number_or(j, "tau", 1.0);

    if (j.contains("params")) {
        const json &p = j.at("params");
        require_object(p, "params");
        spec.params.c = get_number_or(p, "c", spec.params.c);
        spec.params.t0 = get_number_or(p, "t0", spec.params.t0);
        spec.params.theta = get_number_or(p, "theta", spec.params.theta);
        spec.params.exponent = get_number_or(p, "exponent", spec.params.exponent);
        spec.params.scale = get_number_or(p, "scale", spec.params.scale);
        if (p.contains("rows")) {
            if (!p.at("rows").is_array())
                fail("params.rows must be an array");
            for (const auto &r : p.at("rows")) {
                require_object(r, "inline row");
                if (!r.contains("n") || !r.contains("measures") || !r.at("measures").is_array())
                    fail("inline rows need 'n' and 'measures'");
                std::vector<AtomicMeasure> measures;
                for (const auto &m : r.at("measures"))
                    measures.push_back(atomic_measure_from_json(m));
                spec.inline_rows[get_row_index(r.at("n"))] = std::move(measures);
            }
        }
    }

    if (j.contains("rows")) {
        if (!j.at("rows").is_array())
            fail("field 'rows' must be an array");
        for (const auto &r : j.at("rows"))
            spec.rows.push_back(get_row_index(r));
    }

    if (j.contains("scaling")) {
        const json &s = j.at("scaling");
        require_object(s, "scaling");
        if (s.contains("type") && s.at("type") != "const")
            fail("only constant scaling sequences are supported");
        const double value = get_number(s, "value");
        if (spec.space == Space::positive)
            spec.alpha_value = value;
        else
            spec.lambda_angle_value = value;
    }
    spec.validate();
    return spec;
}

json to_json(const MomentVector &m)
{
    json arr = json::array();
    for (const auto &v : m.values) {
        if (m.space == Space::positive)
            arr.push_back(v.real());
        else
            arr.push_back({v.real(), v.imag()});
    }
    return arr;
}

json to_json(const VerificationReport &r, bool include_runtime)
{
    json rows = json::array();
    for (const auto &row : r.rows)
        rows.push_back({{"n", row.n},
                        {"D", row.discrepancy},
                        {"haarStat", row.haar_stat},
                        {"m1Modulus", row.first_moment_modulus},
                        {"prunedMass", row.pruned_mass},
                        {"belowTol", row.below_tol}});
    json j{{"scenario", r.scenario},
           {"rows", rows},
           {"monotone", r.monotone},
           {"final", r.final_discrepancy},
           {"tol", r.tol},
           {"pass", r.pass}};
    if (include_runtime)
        j["runtimeSeconds"] = r.runtime_seconds;
    return j;
}

json to_json(const DiagnoseResult &r)
{
    json rows = json::array();
    for (const auto &d : r.rows) {
        json log_b = json::array();
        for (const auto &l : d.log_b) {
            if (log_b.size() >= 8)
                break;
            log_b.push_back(d.sigma.space() == Space::circle ? l.imag() : l.real());
        }
        rows.push_back({{"n", d.n},
                        {"gamma", d.gamma},
                        {"sigma", to_json(d.sigma)},
                        {"sigmaMass", d.sigma.total_mass()},
                        {"haarStat", d.haar_stat},
                        {"infinitesimality", d.infinitesimality},
                        {"logCenteringHead", log_b}});
    }
    const auto &v = r.verdict;
    json verdict{{"kind", std::string(to_string(v.kind))}, {"sigmaGaps", v.sigma_gaps}, {"gammaGaps", v.gamma_gaps}};
    if (v.kind == Verdict::Kind::converges_to) {
        verdict["gamma"] = v.gamma;
        verdict["sigma"] = to_json(v.sigma);
    }
    return {{"rows", rows}, {"verdict", verdict}};
}

json to_json(const MCEstimate &e)
{
    return {{"dim", e.dim}, {"samples", e.samples}, {"moments", to_json(e.mean)}, {"stdError", e.std_error}};
}

json make_report(std::string_view command, const json &payload)
{
    json j{{"schema", report_schema}, {"command", std::string(command)}};
    for (const auto &[k, v] : payload.items())
        j[k] = v;
    return j;
}

} // namespace freemult
