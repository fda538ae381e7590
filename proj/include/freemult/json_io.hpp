#pragma once

#include <filesystem>
#include <json.hpp>

#include "freemult/arrays.hpp"
#include "freemult/freeconv.hpp"
#include "freemult/infdiv.hpp"
#include "freemult/measure.hpp"
#include "freemult/montecarlo.hpp"
#include "freemult/verify.hpp"

namespace freemult {

using json = nlohmann::ordered_json;

inline constexpr const char *report_schema = "freemult.report/1";

// Parse failures and missing files raise invalid_input.
json read_json_file(const std::filesystem::path &path);

// {"space": "positive" | "circle", "atoms": [{"t" | "theta": x, "w": p}, ...]}
AtomicMeasure atomic_measure_from_json(const json &j);
json to_json(const AtomicMeasure &nu);

// As above with optional "massAtZero" / "massAtInfinity" (half-line only) and
// unnormalized weights. `fallback` is used when "space" is absent.
FiniteMeasure finite_measure_from_json(const json &j, Space fallback = Space::positive);
json to_json(const FiniteMeasure &m);

// {"gamma", "sigma", "haar"}; the space is that of sigma.
bool is_circle_params(const json &j);
FreeIdPosParams free_pos_params_from_json(const json &j);
FreeIdCircParams free_circ_params_from_json(const json &j);
// {"lambda", "rho"}
ClassicalIdParams classical_params_from_json(const json &j);
bool is_classical_params(const json &j);

json to_json(const FreeIdPosParams &p);
json to_json(const FreeIdCircParams &p);
json to_json(const ClassicalIdParams &p);

// {"space", "family", "params", "tau", "rows", "scaling": {"type": "const", "value"}}.
// Inline arrays carry their rows as params.rows = [{"n": n, "measures": [...]}, ...].
ArraySpec array_spec_from_json(const json &j);

json to_json(const MomentVector &m);
json to_json(const VerificationReport &r, bool include_runtime);
json to_json(const DiagnoseResult &r);
json to_json(const MCEstimate &e);

// Wraps a payload as {"schema": report_schema, "command": command, ...payload}.
json make_report(std::string_view command, const json &payload);

} // namespace freemult
