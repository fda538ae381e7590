#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "freemult/cli.hpp"
#include "freemult/errors.hpp"
#include "freemult/json_io.hpp"

using namespace freemult;

namespace {

const std::string src = FREEMULT_SOURCE_DIR;

std::string config(const std::string &name) { return src + "/configs/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "freemult");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs the command writing to a scratch file and compares it with tests/golden/<name>.
void check_golden(std::vector<std::string> args, const std::string &name)
{
    const auto tmp = std::filesystem::temp_directory_path() / ("freemult_" + name);
    args.push_back("-o");
    args.push_back(tmp.string());
    const auto r = run(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK_MESSAGE(slurp(tmp) == slurp(src + "/tests/golden/" + name), name);
    std::filesystem::remove(tmp);
}

json parse(const Run &r) { return json::parse(r.out); }

} // namespace

TEST_CASE("cli convolve")
{
    const auto r = run({"convolve", "-i", config("delta2.json"), "-i", config("delta3.json")});
    REQUIRE(r.code == 0);
    const auto j = parse(r);
    CHECK(j["schema"] == report_schema);
    for (int k = 0; k < 6; ++k)
        CHECK(j["boxtimesMoments"][k].get<double>() == doctest::Approx(std::pow(6.0, k + 1)));
    CHECK(j["classicalProduct"]["atoms"][0]["t"].get<double>() == 6.0);

    const auto h = parse(run({"convolve", "-i", config("half_half.json"), "-i", config("half_half.json")}));
    CHECK(h["boxtimesMoments"][1].get<double>() == doctest::Approx(6.1875).epsilon(1e-12));

    CHECK(run({"convolve", "-i", config("delta2.json"), "-i", config("circle_pair.json")}).code == cli::bad_input);
    CHECK(run({"convolve", "-i", config("delta2.json")}).code == cli::bad_input);
    CHECK(run({"convolve", "-i", src + "/configs/missing.json", "-i", config("delta2.json")}).code == cli::bad_input);
}

TEST_CASE("cli diagnose")
{
    const auto c = parse(run({"diagnose", "-i", config("poisson_circle.json")}));
    CHECK(c["verdict"]["kind"] == "ConvergesTo");
    CHECK(c["verdict"]["gamma"].get<double>() == doctest::Approx(0.86603).epsilon(1e-5));

    const auto s = parse(run({"diagnose", "-i", config("symmetric_pair.json")}));
    CHECK(s["verdict"]["kind"] == "HaarLimit");

    CHECK(run({"diagnose", "-i", config("poisson_circle.json"), "--rows", "100"}).code == cli::bad_input);
    CHECK(run({"diagnose", "-i", config("poisson_circle.json"), "--rows", "1e2,x"}).code == cli::bad_input);
    CHECK(run({"diagnose", "-i", config("poisson_circle.json"), "--tau", "-1"}).code == cli::bad_input);
}

TEST_CASE("cli verify")
{
    const auto r = run({"verify", "-i", config("point_mass_pos.json")});
    CHECK(r.code == cli::ok);
    const auto j = parse(r);
    CHECK(j["pass"] == true);
    CHECK(j["final"].get<double>() == 0.0);
    CHECK_FALSE(j.contains("runtimeSeconds"));

    CHECK(run({"verify", "-i", config("point_mass_pos.json"), "--tol", "0"}).code == cli::failure);
    CHECK(parse(run({"verify", "-i", config("point_mass_pos.json"), "--timing"})).contains("runtimeSeconds"));

    const auto h = parse(run({"verify", "-i", config("symmetric_pair.json")}));
    CHECK(h["scenario"] == "verify_haar");
    CHECK(h["pass"] == true);
    CHECK(run({"verify", "-i", config("point_mass_pos.json"), "--check", "haar"}).code == cli::bad_input);
}

TEST_CASE("cli mc")
{
    const std::vector<std::string> args{"mc",    "-i",   config("half_half.json"), "-i", config("half_half.json"),
                                        "--seed", "11", "--dim",                  "16", "--samples", "3"};
    const auto a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    auto other = args;
    other[6] = "12";
    CHECK(run(other).out != a.out);

    CHECK(run({"mc", "-i", config("half_half.json"), "-i", config("half_half.json")}).code == cli::bad_input);
    CHECK(run({"mc", "-i", config("half_half.json"), "-i", config("half_half.json"), "--seed", "1", "--dim", "1"})
              .code == cli::bad_input);
}

TEST_CASE("cli usage errors")
{
    CHECK(run({}).code == cli::bad_input);
    CHECK(run({"frobnicate"}).code == cli::bad_input);
    CHECK(run({"--help"}).code == cli::ok);
}

TEST_CASE("golden reports")
{
    check_golden({"convolve", "-i", config("delta2.json"), "-i", config("delta3.json")}, "convolve_delta.json");
    check_golden({"convolve", "-i", config("half_half.json"), "-i", config("half_half.json"), "--order", "4"},
                 "convolve_half.json");
    check_golden({"diagnose", "-i", config("poisson_circle.json")}, "diagnose_poisson_circle.json");
    check_golden({"diagnose", "-i", config("symmetric_pair.json")}, "diagnose_symmetric_pair.csv");
    check_golden({"verify", "-i", config("point_mass_pos.json")}, "verify_point_mass.json");
    check_golden({"idlaw", "-i", config("free_poisson_circle_law.json"), "--order", "4"}, "idlaw_circle.json");
    check_golden({"mc", "-i", config("half_half.json"), "-i", config("half_half.json"), "--seed", "7", "--dim", "24",
                  "--samples", "5"},
                 "mc_half.json");
}

TEST_CASE("json round trips")
{
    const AtomicMeasure pos(Space::positive, {{0.5, 0.25}, {3.0, 0.75}});
    CHECK(atomic_measure_from_json(to_json(pos)) == pos);
    const AtomicMeasure circ(Space::circle, {{-0.4, 0.5}, {1.1, 0.5}});
    CHECK(atomic_measure_from_json(to_json(circ)) == circ);

    const FiniteMeasure fm(Space::positive, {{2.0, 0.3}}, 0.1, 0.2);
    CHECK(finite_measure_from_json(to_json(fm)) == fm);

    const FreeIdPosParams p{-0.7, fm};
    const auto p2 = free_pos_params_from_json(to_json(p));
    CHECK(p2.gamma == p.gamma);
    CHECK(p2.sigma == p.sigma);

    const auto c = FreeIdCircParams::make(0.5, FiniteMeasure(Space::circle, {{1.0, 0.4}}));
    const auto c2 = free_circ_params_from_json(to_json(c));
    CHECK(c2.gamma == c.gamma);
    CHECK(c2.sigma == c.sigma);
    CHECK(free_circ_params_from_json(to_json(FreeIdCircParams::haar_measure())).haar);

    const ClassicalIdParams q{1.25, FiniteMeasure(Space::positive, {{0.5, 1.0}})};
    const auto q2 = classical_params_from_json(to_json(q));
    CHECK(q2.lambda == q.lambda);
    CHECK(q2.rho == q.rho);

    CHECK_THROWS_AS(atomic_measure_from_json(json::parse(R"({"space": "positive", "atoms": [{"t": -1, "w": 1}]})")),
                    invalid_input);
    CHECK_THROWS_AS(atomic_measure_from_json(json::parse(R"({"space": "torus", "atoms": []})")), invalid_input);

    const auto spec = array_spec_from_json(read_json_file(config("inline_pos.json")));
    CHECK(spec.family == Family::inline_rows);
    CHECK_FALSE(spec.inline_rows.empty());
}
