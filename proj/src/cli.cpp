#include "freemult/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "freemult/errors.hpp"
#include "freemult/json_io.hpp"
#include "freemult/transforms.hpp"

namespace freemult::cli {

namespace {

struct CommandConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string output;
    std::string rows;
    std::optional<int> grid;
    std::optional<int> order;
    std::optional<double> tol;
    std::optional<double> tau;
    std::optional<std::uint64_t> seed;
    int dim = 512;
    int samples = 200;
    std::string check = "auto";
    bool timing = false;
    bool complex_unitary = false;
};

const std::vector<long> default_rows{100, 1000, 10000};

std::vector<long> parse_rows(const std::string &text)
{
    std::vector<long> rows;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double x = 0.0;
        try {
            std::size_t used = 0;
            x = std::stod(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw invalid_input("--rows: cannot parse '" + item + "'");
        }
        if (!(x >= 1.0 && x <= 1e9) || std::floor(x) != x)
            throw invalid_input("--rows: entries must be integers in [1, 1e9]");
        rows.push_back(static_cast<long>(x));
    }
    if (rows.empty())
        throw invalid_input("--rows: empty schedule");
    return rows;
}

void expect_inputs(const CommandConfig &cfg, std::size_t lo, std::size_t hi)
{
    if (cfg.inputs.size() < lo || cfg.inputs.size() > hi) {
        std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
        throw invalid_input(cfg.command + " takes " + want + " input file(s)");
    }
}

GridSpec half_line_grid(const CommandConfig &cfg)
{
    if (!cfg.grid)
        return GridSpec::default_positive();
    return GridSpec::interval(-0.45, -0.05, *cfg.grid);
}

ArraySpec load_array(const CommandConfig &cfg)
{
    ArraySpec spec = array_spec_from_json(read_json_file(cfg.inputs.front()));
    if (cfg.tau) {
        spec.tau = *cfg.tau;
        spec.validate();
    }
    if (!cfg.rows.empty())
        spec.rows = parse_rows(cfg.rows);
    else if (spec.rows.empty())
        spec.rows = default_rows;
    return spec;
}

json cmd_convolve(const CommandConfig &cfg)
{
    expect_inputs(cfg, 2, 2);
    const auto mu = atomic_measure_from_json(read_json_file(cfg.inputs[0]));
    const auto nu = atomic_measure_from_json(read_json_file(cfg.inputs[1]));
    if (mu.space() != nu.space())
        throw invalid_input("convolve: the two measures live on different spaces");
    const int order = cfg.order.value_or(6);
    const auto series = boxtimes_moments(mu, nu, order);
    json j{{"space", std::string(to_string(mu.space()))},
           {"order", order},
           {"boxtimesMoments", to_json(series)}};
    if (order <= max_nc_order) {
        const auto oracle = nc_moment_oracle(mu, nu, order);
        double delta = 0.0;
        for (int k = 1; k <= order; ++k)
            delta = std::max(delta, std::abs(series(k) - oracle(k)));
        j["oracleMoments"] = to_json(oracle);
        j["maxOracleDelta"] = delta;
    }
    j["classicalProduct"] = to_json(classical_multconv(mu, nu));
    return j;
}

json cmd_idlaw(const CommandConfig &cfg)
{
    expect_inputs(cfg, 1, 1);
    const json in = read_json_file(cfg.inputs[0]);
    const int order = cfg.order.value_or(6);
    if (is_classical_params(in)) {
        const auto q = classical_params_from_json(in);
        json phi = json::array();
        for (double s : default_s_panel()) {
            const cplx v = classical_phi_idlaw(q, s);
            phi.push_back({{"s", s}, {"re", v.real()}, {"im", v.imag()}});
        }
        json j{{"kind", "classical"}, {"params", to_json(q)}, {"mellinFourier", phi}};
        if (q.rho.mass_at_zero() == 0.0 && q.rho.mass_at_infinity() == 0.0)
            j["free"] = to_json(cor34_inverse(q));
        return j;
    }
    if (is_circle_params(in)) {
        const auto p = free_circ_params_from_json(in);
        json j{{"kind", "free-circle"}, {"params", to_json(p)}};
        if (p.haar) {
            j["moments"] = to_json(MomentVector{Space::circle, std::vector<cplx>(static_cast<std::size_t>(order))});
        } else {
            j["moments"] = to_json(idlaw_moments_circ(p, order));
        }
        return j;
    }
    const auto p = free_pos_params_from_json(in);
    const auto grid = half_line_grid(cfg);
    const auto s = idlaw_s_pos(p, grid);
    json values = json::array();
    for (std::size_t i = 0; i < s.size(); ++i)
        values.push_back({{"w", grid.points[i].real()}, {"S", s[i]}});
    json j{{"kind", "free-positive"}, {"params", to_json(p)}, {"sTransform", values}};
    if (p.sigma.mass_at_zero() == 0.0 && p.sigma.mass_at_infinity() == 0.0)
        j["classical"] = to_json(cor34_map(p));
    return j;
}

std::string diagnose_csv(const DiagnoseResult &r)
{
    std::ostringstream out;
    out.precision(17);
    out << "n,gamma,sigmaMass,haarStat,infinitesimality\n";
    for (const auto &d : r.rows)
        out << d.n << ',' << d.gamma << ',' << d.sigma.total_mass() << ',' << d.haar_stat << ','
            << d.infinitesimality << '\n';
    out << "# verdict " << to_string(r.verdict.kind) << '\n';
    return out.str();
}

struct Outcome {
    json report;
    std::string csv;
    int code = ok;
};

Outcome cmd_diagnose(const CommandConfig &cfg)
{
    expect_inputs(cfg, 1, 1);
    const ArraySpec spec = load_array(cfg);
    const auto result = diagnose(spec, spec.rows);
    json j{{"space", std::string(to_string(spec.space))}, {"family", std::string(to_string(spec.family))}};
    const json body = to_json(result);
    for (const auto &[k, v] : body.items())
        j[k] = v;
    return {j, diagnose_csv(result), ok};
}

Outcome cmd_verify(const CommandConfig &cfg)
{
    expect_inputs(cfg, 1, 1);
    const ArraySpec spec = load_array(cfg);
    std::string check = cfg.check;
    if (check == "auto") {
        if (spec.space == Space::positive) {
            check = "pos";
        } else {
            const auto d = diagnose(spec, spec.rows);
            check = d.verdict.kind == Verdict::Kind::haar_limit ? "haar" : "circ";
        }
    }
    VerificationReport report;
    if (check == "pos")
        report = verify_pos(spec, spec.rows, half_line_grid(cfg), cfg.tol.value_or(1e-2));
    else if (check == "circ")
        report = verify_circ(spec, spec.rows, cfg.order.value_or(default_circle_order), cfg.tol.value_or(1e-2));
    else if (check == "haar")
        report = verify_haar(spec, spec.rows, cfg.tol.value_or(1e-2));
    else if (check == "cor34")
        report = corollary34_check(spec, spec.rows, default_s_panel(), cfg.tol.value_or(5e-2));
    else
        throw invalid_input("unknown check '" + check + "'");
    return {to_json(report, cfg.timing), to_csv(report), report.pass ? ok : failure};
}

json cmd_mc(const CommandConfig &cfg)
{
    expect_inputs(cfg, 1, 2);
    if (!cfg.seed)
        throw invalid_input("mc requires --seed");
    MCConfig mc;
    mc.dim = cfg.dim;
    mc.samples = cfg.samples;
    mc.seed = *cfg.seed;
    mc.moments = cfg.order.value_or(4);
    mc.complex_unitary = cfg.complex_unitary;

    const json first = read_json_file(cfg.inputs[0]);
    if (cfg.inputs.size() == 1) {
        // A circle array: simulate one row.
        const ArraySpec spec = load_array(cfg);
        if (spec.space != Space::circle)
            throw invalid_input("mc with a single input needs a circle array spec");
        const long n = spec.rows.front();
        mc.space = Space::circle;
        const auto est = rmt_oracle_circ_row(spec.row(n), spec.lambda_angle(n), mc);
        const auto d = diagnose_row(spec, n);
        const auto predicted = idlaw_moments_circ(FreeIdCircParams::make(d.gamma, d.sigma), mc.moments);
        return {{"space", "circle"}, {"row", n}, {"seed", mc.seed}, {"estimate", to_json(est)},
                {"limitMoments", to_json(predicted)}};
    }
    const auto mu = atomic_measure_from_json(first);
    const auto nu = atomic_measure_from_json(read_json_file(cfg.inputs[1]));
    if (mu.space() != nu.space())
        throw invalid_input("mc: the two measures live on different spaces");
    mc.space = mu.space();
    const auto est = mu.space() == Space::positive ? rmt_oracle_pos(mu, nu, mc) : rmt_oracle_circ(mu, nu, mc);
    return {{"space", std::string(to_string(mu.space()))}, {"seed", mc.seed}, {"estimate", to_json(est)},
            {"boxtimesMoments", to_json(boxtimes_moments(mu, nu, mc.moments))}};
}

void emit(const CommandConfig &cfg, const std::string &text, std::ostream &out)
{
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f)
        throw invalid_input("cannot write '" + cfg.output + "'");
    f << text;
}

bool wants_csv(const CommandConfig &cfg)
{
    const auto &o = cfg.output;
    return o.size() >= 4 && o.compare(o.size() - 4, 4, ".csv") == 0;
}

void add_common(CLI::App *sub, CommandConfig &cfg)
{
    sub->add_option("-i,--input", cfg.inputs, "Input JSON file (repeatable)")->check(CLI::ExistingFile);
    sub->add_option("-o,--output", cfg.output, "Write the report here (.csv for tables) instead of stdout");
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CommandConfig cfg;
    CLI::App app{"Free multiplicative convolution toolkit", "freemult"};
    app.require_subcommand(1);

    auto *convolve = app.add_subcommand("convolve", "boxtimes and classical products of two measures");
    auto *idlaw = app.add_subcommand("idlaw", "Evaluate an infinitely divisible law from its parameters");
    auto *diag = app.add_subcommand("diagnose", "Row diagnostics and verdict for a triangular array");
    auto *verify = app.add_subcommand("verify", "Compare row products with the predicted limit");
    auto *mc = app.add_subcommand("mc", "Random matrix Monte Carlo estimate of boxtimes moments");
    for (auto *sub : {convolve, idlaw, diag, verify, mc})
        add_common(sub, cfg);

    auto positive_int = CLI::Range(1, 1 << 20);
    for (auto *sub : {diag, verify, mc}) {
        sub->add_option("--rows", cfg.rows, "Row schedule, e.g. 1e2,1e3,1e4");
        sub->add_option("--tau", cfg.tau, "Centering window")->check(CLI::PositiveNumber);
    }
    for (auto *sub : {idlaw, verify})
        sub->add_option("--grid", cfg.grid, "Number of half-line grid points in [-0.45, -0.05]")
            ->check(CLI::Range(2, 100000));
    for (auto *sub : {convolve, idlaw, verify, mc})
        sub->add_option("--order", cfg.order, "Series order / number of moments")->check(CLI::Range(1, 64));
    verify->add_option("--tol", cfg.tol, "Pass tolerance on the final discrepancy")->check(CLI::NonNegativeNumber);
    verify->add_option("--check", cfg.check, "auto, pos, circ, haar or cor34")
        ->check(CLI::IsMember({"auto", "pos", "circ", "haar", "cor34"}));
    verify->add_flag("--timing", cfg.timing, "Include the runtime in the report");
    mc->add_option("--seed", cfg.seed, "PRNG seed (required)");
    mc->add_option("--dim", cfg.dim, "Matrix dimension")->check(CLI::Range(2, 8192));
    mc->add_option("--samples", cfg.samples, "Number of samples")->check(positive_int);
    mc->add_flag("--complex", cfg.complex_unitary, "Haar unitary conjugation on the half-line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "freemult: " << e.what() << '\n';
        return bad_input;
    }

    try {
        for (auto *sub : app.get_subcommands())
            cfg.command = sub->get_name();
        Outcome result;
        if (cfg.command == "convolve")
            result.report = cmd_convolve(cfg);
        else if (cfg.command == "idlaw")
            result.report = cmd_idlaw(cfg);
        else if (cfg.command == "diagnose")
            result = cmd_diagnose(cfg);
        else if (cfg.command == "verify")
            result = cmd_verify(cfg);
        else
            result.report = cmd_mc(cfg);

        if (wants_csv(cfg)) {
            if (result.csv.empty())
                throw invalid_input(cfg.command + " has no CSV form");
            emit(cfg, result.csv, out);
        } else {
            emit(cfg, make_report(cfg.command, result.report).dump(2) + "\n", out);
        }
        return result.code;
    } catch (const invalid_input &e) {
        err << "freemult: invalid input: " << e.what() << '\n';
        return bad_input;
    } catch (const numerical_error &e) {
        err << "freemult: numerical failure: " << e.what() << '\n';
        return failure;
    } catch (const std::exception &e) {
        err << "freemult: " << e.what() << '\n';
        return failure;
    }
}

} // namespace freemult::cli
