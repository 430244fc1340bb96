#pragma once

// Command-line front end: spectra, wavefunctions, oracle validation, limit
// studies and minimal-length/curvature effect estimates, written as CSV or JSON.
//
// Exit codes: 0 success, 2 configuration error, 3 level not bound,
// 4 validation failure, 1 any other runtime failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvedh/curvedh.hpp"

namespace curvedh::cli {

using json = nlohmann::ordered_json;

enum exit_code : int { ok = 0, failure = 1, config_error = 2, unbound_level = 3, validation_failed = 4 };

inline constexpr const char* config_env_var = "CURVEDH_CONFIG";
inline constexpr double validation_error_tol = 1e-6;
inline constexpr double validation_residual_tol = 1e-8;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Configuration

/// Every input is dimensionless: k a1^2, R/a1, L/a1, r/a1.
struct RunConfig {
    std::string command;
    std::vector<double> kappa;          // several values only for validate
    std::optional<double> ratio;        // signed R/a1; negative selects hyperbolic space
    std::optional<int> nmax;
    std::optional<int> n;
    std::optional<int> l;
    std::optional<std::string> minimal_length;  // L/a1 as a number, or "planck"
    double precision_ev = 1e-12;
    std::optional<double> level;        // real level for the effects command
    std::optional<std::size_t> grid_n;
    double rmax = 0.0;
    std::string units = "atomic";
    std::string format = "csv";
    std::string out;

    UnitScales scales() const { return units == "ev" ? UnitScales::electron_volt() : UnitScales::atomic(); }

    /// The single curvature of spectrum/wavefunction/limits/effects.
    Curvature curvature(double fallback_kappa = 0.0) const
    {
        if (ratio)
            return Curvature::from_radius(*ratio);
        return Curvature(kappa.empty() ? fallback_kappa : kappa.front());
    }

    /// The configured minimal length, or `fallback` when none was given.
    MinimalLength length(const UnitScales& u, MinimalLength fallback = MinimalLength()) const
    {
        if (!minimal_length)
            return fallback;
        if (*minimal_length == "planck")
            return MinimalLength::planck(u);
        return MinimalLength(std::stod(*minimal_length));
    }
};

namespace detail {

inline bool parse_number(const std::string& s, double& v)
{
    try {
        std::size_t used = 0;
        v = std::stod(s, &used);
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

// Keys accepted in a configuration file (flat object).
inline void apply_config_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config file must hold a flat JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (v.is_object())
                throw ConfigError("config key '" + key + "': nested objects are not supported");
            if (key == "command")
                cfg.command = v.get<std::string>();
            else if (key == "kappa") {
                cfg.kappa = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
                if (cfg.kappa.empty())
                    throw ConfigError("config key 'kappa' is an empty list");
            }
            else if (key == "ratio")
                cfg.ratio = v.get<double>();
            else if (key == "nmax")
                cfg.nmax = v.get<int>();
            else if (key == "n")
                cfg.n = v.get<int>();
            else if (key == "l")
                cfg.l = v.get<int>();
            else if (key == "minimal_length")
                cfg.minimal_length = v.is_string() ? v.get<std::string>() : json(v.get<double>()).dump();
            else if (key == "precision_ev")
                cfg.precision_ev = v.get<double>();
            else if (key == "level")
                cfg.level = v.get<double>();
            else if (key == "grid_n")
                cfg.grid_n = v.get<std::size_t>();
            else if (key == "rmax")
                cfg.rmax = v.get<double>();
            else if (key == "units")
                cfg.units = v.get<std::string>();
            else if (key == "format")
                cfg.format = v.get<std::string>();
            else if (key == "out")
                cfg.out = v.get<std::string>();
            else
                throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const json::type_error& e) {
        throw ConfigError(std::string("config file has a value of the wrong type: ") + e.what());
    }
    if (j.contains("kappa") && j.contains("ratio"))
        throw ConfigError("config file sets both 'kappa' and 'ratio'; they are mutually exclusive");
}

inline void require(bool cond, const std::string& message)
{
    if (!cond)
        throw ConfigError(message);
}

inline void validate_config(const RunConfig& c)
{
    static const std::vector<std::string> commands{"spectrum", "wavefunction", "validate", "limits", "effects"};
    require(std::find(commands.begin(), commands.end(), c.command) != commands.end(),
            "unknown or missing command '" + c.command + "'");
    for (double k : c.kappa)
        require(std::isfinite(k), "--kappa must be finite");
    if (c.ratio)
        require(std::isfinite(*c.ratio) && *c.ratio != 0.0, "--ratio must be finite and non-zero");
    if (c.command != "validate")
        require(c.kappa.size() <= 1, "--kappa may be repeated only for validate");
    else
        require(!(c.ratio && !c.kappa.empty()), "validate takes either --kappa values or one --ratio");
    if (c.nmax)
        require(*c.nmax >= 1 && *c.nmax <= 1000000, "--nmax must lie in [1, 1e6]");
    if (c.n)
        require(*c.n >= 1, "-n must be >= 1");
    if (c.l)
        require(*c.l >= 0, "-l must be >= 0");
    if (c.n && c.l)
        require(*c.l < *c.n, "-l must be smaller than -n");
    if (c.minimal_length && *c.minimal_length != "planck") {
        double v = 0;
        require(parse_number(*c.minimal_length, v) && std::isfinite(v) && v >= 0.0,
                "--minimal-length must be a non-negative number or 'planck'");
    }
    require(std::isfinite(c.precision_ev) && c.precision_ev >= 0.0, "--precision-ev must be non-negative");
    if (c.level)
        require(std::isfinite(*c.level) && *c.level >= 1.0, "--level must be >= 1");
    if (c.grid_n)
        require(*c.grid_n >= 16 && *c.grid_n <= 50000000, "--grid-n must lie in [16, 5e7]");
    require(std::isfinite(c.rmax) && c.rmax >= 0.0, "--rmax must be non-negative");
    require(c.units == "atomic" || c.units == "ev", "--units must be 'atomic' or 'ev'");
    require(c.format == "csv" || c.format == "json", "--format must be 'csv' or 'json'");
    if (c.command == "wavefunction")
        require(c.n.has_value(), "wavefunction needs -n");
    if (c.command == "validate")
        require(!(c.nmax && *c.nmax > 12), "validate supports --nmax up to 12");
}

} // namespace detail

/// Flags override the config file, which overrides built-in defaults. The config
/// file comes from --config, or else from the CURVEDH_CONFIG environment variable.
inline RunConfig parse_args(std::vector<std::string> args)
{
    CLI::App app{"curvedh: hydrogen spectra and wavefunctions on spaces of constant curvature"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    std::string command, config_path, minimal_length, units, format, out;
    std::vector<double> kappa;
    double ratio = 0, precision_ev = 0, level = 0, rmax = 0;
    int nmax = 0, n = 0, l = 0;
    std::size_t grid_n = 0;

    app.add_option("command", command, "spectrum | wavefunction | validate | limits | effects")->required();
    auto* o_kappa = app.add_option("--kappa", kappa, "Curvature k a1^2 (repeatable for validate)");
    auto* o_ratio = app.add_option("--ratio", ratio, "Curvature radius R/a1 (negative: hyperbolic)");
    o_kappa->excludes(o_ratio);
    auto* o_nmax = app.add_option("--nmax", nmax, "Highest principal quantum number");
    auto* o_n = app.add_option("-n", n, "Principal quantum number");
    auto* o_l = app.add_option("-l", l, "Orbital quantum number");
    auto* o_ml = app.add_option("--minimal-length", minimal_length, "Minimal length L/a1, or 'planck'");
    auto* o_prec = app.add_option("--precision-ev", precision_ev, "Energy precision of the 1S-2S splitting, eV");
    auto* o_level = app.add_option("--level", level, "Real level n at which effects are compared");
    auto* o_grid = app.add_option("--grid-n", grid_n, "Grid points (oracle: interior points of the coarse grid)");
    auto* o_rmax = app.add_option("--rmax", rmax, "Radial extent r_max/a1 (0: automatic)");
    auto* o_units = app.add_option("--units", units, "atomic | ev");
    auto* o_format = app.add_option("--format", format, "csv | json");
    auto* o_out = app.add_option("--out", out, "Output file (default: standard output)");
    app.add_option("--config", config_path, "Flat JSON configuration file");

    std::reverse(args.begin(), args.end());
    app.parse(args);

    RunConfig cfg;
    if (config_path.empty()) {
        if (const char* env = std::getenv(config_env_var); env && *env)
            config_path = env;
    }
    if (!config_path.empty())
        detail::apply_config_file(cfg, config_path);

    cfg.command = command;
    if (o_kappa->count() || o_ratio->count()) {
        cfg.kappa.clear();
        cfg.ratio.reset();
    }
    if (o_kappa->count())
        cfg.kappa = kappa;
    if (o_ratio->count())
        cfg.ratio = ratio;
    if (o_nmax->count())
        cfg.nmax = nmax;
    if (o_n->count())
        cfg.n = n;
    if (o_l->count())
        cfg.l = l;
    if (o_ml->count())
        cfg.minimal_length = minimal_length;
    if (o_prec->count())
        cfg.precision_ev = precision_ev;
    if (o_level->count())
        cfg.level = level;
    if (o_grid->count())
        cfg.grid_n = grid_n;
    if (o_rmax->count())
        cfg.rmax = rmax;
    if (o_units->count())
        cfg.units = units;
    if (o_format->count())
        cfg.format = format;
    if (o_out->count())
        cfg.out = out;

    detail::validate_config(cfg);
    return cfg;
}

// ---------------------------------------------------------------------------
// Tables

/// Metadata plus rows of named columns. Rows hold JSON scalars; null marks an omitted value.
struct Table {
    json metadata = json::object();
    std::vector<std::string> columns;
    std::vector<json> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

inline void to_json(json& j, const Table& t)
{
    j = json::object();
    j["metadata"] = t.metadata;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
}

inline void from_json(const json& j, Table& t)
{
    t.metadata = j.at("metadata");
    t.columns = j.at("columns").get<std::vector<std::string>>();
    t.rows = j.at("rows").get<std::vector<json>>();
}

namespace detail {

inline std::string format_double(double v)
{
    if (!std::isfinite(v))
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    if (v == 0.0)
        v = 0.0;  // print -0 as 0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_cell(const json& v)
{
    if (v.is_null())
        return "";
    if (v.is_number_float())
        return format_double(v.get<double>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string quoted = "\"";
        for (char c : s)
            quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
        return quoted + "\"";
    }
    return v.dump();
}

/// JSON number, or null for non-finite values.
inline json number(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

} // namespace detail

inline void write_csv(std::ostream& os, const Table& t)
{
    for (const auto& [key, v] : t.metadata.items())
        os << "# " << key << ": " << detail::csv_cell(v) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << detail::csv_cell(row.contains(t.columns[i]) ? row[t.columns[i]] : json());
        os << '\n';
    }
}

inline void write_json(std::ostream& os, const Table& t)
{
    os << json(t).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Row records (round-trip through JSON)

struct SpectrumRow {
    int n = 1;
    int l = 0;
    bool bound = true;
    // NaN when the level is not bound (serialized as null).
    double E_base = 0, E_ml_shift = 0, E_curvature_term = 0, E_total = 0;
};

inline void to_json(json& j, const SpectrumRow& r)
{
    using detail::number;
    j = json{{"n", r.n}, {"l", r.l}, {"E_base", number(r.E_base)}, {"E_ml_shift", number(r.E_ml_shift)},
             {"E_curvature_term", number(r.E_curvature_term)}, {"E_total", number(r.E_total)}, {"bound", r.bound}};
}

namespace detail {
inline double get_number(const json& j, const char* key)
{
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}
} // namespace detail

inline void from_json(const json& j, SpectrumRow& r)
{
    r.n = j.at("n").get<int>();
    r.l = j.at("l").get<int>();
    r.bound = j.at("bound").get<bool>();
    r.E_base = detail::get_number(j, "E_base");
    r.E_ml_shift = detail::get_number(j, "E_ml_shift");
    r.E_curvature_term = detail::get_number(j, "E_curvature_term");
    r.E_total = detail::get_number(j, "E_total");
}

struct ValidationRow {
    double kappa = 0;
    LevelRecord level;
    bool pass = false;
};

inline void to_json(json& j, const ValidationRow& v)
{
    using detail::number;
    const auto& r = v.level;
    j = json{{"kappa", v.kappa},
             {"n", r.n},
             {"l", r.l},
             {"lambda_analytic", number(r.lambda_analytic)},
             {"lambda_numeric", number(r.lambda_numeric)},
             {"relative_error", number(r.relative_error)},
             {"ode_residual", number(r.ode_residual)},
             {"node_count", r.node_count},
             {"analytic_node_count", r.analytic_node_count},
             {"lambda_h", number(r.lambda_h)},
             {"lambda_h2", number(r.lambda_h2)},
             {"lambda_h4", number(r.lambda_h4)},
             {"error_ratio", number(r.error_ratio)},
             {"convergence_order", number(r.convergence_order)},
             {"pass", v.pass}};
}

inline void from_json(const json& j, ValidationRow& v)
{
    auto& r = v.level;
    v.kappa = j.at("kappa").get<double>();
    r.n = j.at("n").get<int>();
    r.l = j.at("l").get<int>();
    r.lambda_analytic = detail::get_number(j, "lambda_analytic");
    r.lambda_numeric = detail::get_number(j, "lambda_numeric");
    r.relative_error = detail::get_number(j, "relative_error");
    r.ode_residual = detail::get_number(j, "ode_residual");
    r.node_count = j.at("node_count").get<int>();
    r.analytic_node_count = j.at("analytic_node_count").get<int>();
    r.lambda_h = detail::get_number(j, "lambda_h");
    r.lambda_h2 = detail::get_number(j, "lambda_h2");
    r.lambda_h4 = detail::get_number(j, "lambda_h4");
    r.error_ratio = detail::get_number(j, "error_ratio");
    r.convergence_order = detail::get_number(j, "convergence_order");
    v.pass = j.at("pass").get<bool>();
}

struct EffectsReport {
    double kappa = 0;               // k a1^2
    double minimal_length = 0;      // L/a1
    double level = 2;
    double planck_Q = 0;
    double curvature_relative = 0;  // |dE/E| of the curvature term at `level`
    double ml_relative = 0;         // |dE/E| of the l = 0 minimal-length term at `level`
    double crossover_level = 0;     // NaN if no crossover
    double crossover_relative = 0;
    double transition_level = 0;    // NaN unless k > 0
    double curvature_relative_at_transition = 0;
    double precision_ev = 0;
    double length_bound_ratio = 0;  // L/a1
    double length_bound_m = 0;
};

#define CURVEDH_EFFECTS_FIELDS(X)                                                                                      \
    X(kappa) X(minimal_length) X(level) X(planck_Q) X(curvature_relative) X(ml_relative) X(crossover_level)           \
        X(crossover_relative) X(transition_level) X(curvature_relative_at_transition) X(precision_ev)                  \
            X(length_bound_ratio) X(length_bound_m)

inline void to_json(json& j, const EffectsReport& e)
{
    j = json::object();
#define CURVEDH_PUT(f) j[#f] = detail::number(e.f);
    CURVEDH_EFFECTS_FIELDS(CURVEDH_PUT)
#undef CURVEDH_PUT
}

inline void from_json(const json& j, EffectsReport& e)
{
#define CURVEDH_GET(f) e.f = detail::get_number(j, #f);
    CURVEDH_EFFECTS_FIELDS(CURVEDH_GET)
#undef CURVEDH_GET
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline json base_metadata(const RunConfig& c)
{
    json m = json::object();
    m["command"] = c.command;
    m["units"] = c.units;
    m["energy_unit"] = c.units == "ev" ? "eV" : "hartree";
    m["length_unit"] = "bohr";
    return m;
}

} // namespace detail

inline Table cmd_spectrum(const RunConfig& c)
{
    const UnitScales u = c.scales();
    const Curvature k = c.curvature();
    const MinimalLength len = c.length(u);
    const int nmax = c.nmax.value_or(4);
    const int l = c.l.value_or(0);

    Table t;
    t.metadata = detail::base_metadata(c);
    t.metadata["kappa"] = k.value();
    t.metadata["minimal_length"] = len.ratio();
    t.metadata["l"] = l;
    t.columns = {"n", "l", "E_base", "E_ml_shift", "E_curvature_term", "E_total", "bound"};
    for (int n = std::max(1, l + 1); n <= nmax; ++n) {
        const QuantumNumbers qn(n, l);
        SpectrumRow row;
        row.n = n;
        row.l = l;
        row.bound = bound_state_admissible(qn, k, u);
        if (row.bound) {
            const auto lev = combined_level(qn, k, len, u);
            row.E_base = lev.base;
            row.E_ml_shift = lev.ml_shift;
            row.E_curvature_term = lev.curvature;
            row.E_total = lev.total;
        } else {
            row.E_base = row.E_ml_shift = row.E_curvature_term = row.E_total = std::numeric_limits<double>::quiet_NaN();
        }
        t.rows.push_back(row);
    }
    return t;
}

inline Table cmd_wavefunction(const RunConfig& c)
{
    const UnitScales u = UnitScales::atomic();  // wavefunctions are tabulated in atomic units
    const Curvature k = c.curvature();
    const QuantumNumbers qn(*c.n, c.l.value_or(0));
    const auto grid = default_grid(qn, k, u, c.grid_n.value_or(2001), c.rmax);
    const auto table = radial_wavefunction(qn, k, u, grid);

    Table t;
    t.metadata = detail::base_metadata(c);
    t.metadata["n"] = qn.n();
    t.metadata["l"] = qn.l();
    t.metadata["kappa"] = k.value();
    t.metadata["norm"] = table.norm;
    t.metadata["node_count"] = count_sign_changes(table.values);
    t.columns = {"r", "G"};
    for (std::size_t i = 0; i < table.grid.size(); ++i)
        t.rows.push_back(json{{"r", table.grid[i]}, {"G", detail::number(table.values[i])}});
    return t;
}

/// Returns the table and whether every level passed.
inline std::pair<Table, bool> cmd_validate(const RunConfig& c)
{
    const UnitScales u = UnitScales::atomic();
    std::vector<double> kappas = c.kappa;
    if (c.ratio)
        kappas = {c.curvature().value()};
    if (kappas.empty())
        kappas = {0.0, 1e-2, -1e-2, 1e-4, -1e-4};

    OracleOptions opt;
    if (c.grid_n) {
        opt.points = *c.grid_n;
        opt.max_spacing = 0.0;  // honour an explicit grid exactly
    }
    opt.r_max = c.rmax;
    const auto report = validate_matrix(kappas, c.nmax.value_or(4), opt, u);
    if (report.levels.empty())
        throw ConfigError("validation matrix is empty (no admissible levels)");

    Table t;
    t.metadata = detail::base_metadata(c);
    t.metadata["energy_unit"] = "lambda (atomic)";
    t.metadata["relative_error_tolerance"] = validation_error_tol;
    t.metadata["residual_tolerance"] = validation_residual_tol;
    t.metadata["max_relative_error"] = report.max_relative_error;
    t.metadata["max_residual"] = report.max_residual;
    t.columns = {"kappa", "n", "l", "lambda_analytic", "lambda_numeric", "relative_error", "ode_residual", "node_count",
                 "analytic_node_count", "lambda_h", "lambda_h2", "lambda_h4", "error_ratio", "convergence_order", "pass"};
    bool all = true;
    std::size_t at = 0;
    for (const auto& g : report.grids) {
        const auto levels = static_cast<std::size_t>(admissible_n_max(Curvature(g.kappa), c.nmax.value_or(4), u) - g.l);
        for (std::size_t i = 0; i < levels; ++i, ++at) {
            ValidationRow row{g.kappa, report.levels[at], false};
            const auto& r = row.level;
            row.pass = r.relative_error <= validation_error_tol && r.ode_residual <= validation_residual_tol &&
                       r.node_count == r.n - r.l - 1 && r.analytic_node_count == r.n - r.l - 1;
            all = all && row.pass;
            t.rows.push_back(row);
        }
    }
    return {t, all};
}

namespace detail {

inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0 && y[i] > 0))
            continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        n += 1;
    }
    if (n < 2)
        return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

/// Flat-limit gap over a halving curvature sequence and Jacobi->Laguerre gap over nu.
inline Table cmd_limits(const RunConfig& c)
{
    const UnitScales u = UnitScales::atomic();
    const QuantumNumbers qn(c.n.value_or(2), c.l.value_or(0));
    const double sign = (c.ratio ? *c.ratio < 0 : (!c.kappa.empty() && c.kappa.front() < 0)) ? -1.0 : 1.0;
    std::vector<double> kappas{0.0};
    for (double k = 1e-3; k > 3e-5; k /= 2.0)
        kappas.push_back(sign * k);
    const double n = qn.n();
    const double end = c.rmax > 0 ? c.rmax : std::max(20.0, 3.0 * n * n);
    const auto grid = uniform_grid(0.0, end, c.grid_n.value_or(4001));
    const auto gaps = flat_limit_gap(qn, kappas, grid, u);

    Table t;
    t.metadata = detail::base_metadata(c);
    t.metadata["n"] = qn.n();
    t.metadata["l"] = qn.l();
    std::vector<double> abs_k;
    for (double k : kappas)
        abs_k.push_back(std::abs(k));
    t.metadata["kappa_slope"] = detail::number(detail::fitted_slope(abs_k, gaps));

    const double alpha = 2.0 * qn.l() + 1.0, x = 1.0;
    std::vector<double> nus;
    for (double e = 2.0; e <= 6.0 + 1e-9; e += 0.5)
        nus.push_back(std::pow(10.0, e));
    json slopes = json::object();
    std::vector<json> nu_rows;
    for (int m = 0; m <= 5; ++m) {
        std::vector<double> g;
        for (double nu : nus) {
            g.push_back(jacobi_laguerre_limit_gap(m, alpha, nu, x));
            nu_rows.push_back(json{{"study", "nu"}, {"parameter", nu}, {"m", m}, {"gap", g.back()}});
        }
        if (m > 0)
            slopes[std::to_string(m)] = detail::number(detail::fitted_slope(nus, g));
    }
    t.metadata["nu_slopes"] = slopes;
    t.metadata["alpha"] = alpha;
    t.metadata["x"] = x;

    t.columns = {"study", "parameter", "m", "gap"};
    for (std::size_t i = 0; i < kappas.size(); ++i)
        t.rows.push_back(json{{"study", "kappa"}, {"parameter", kappas[i]}, {"m", qn.m()}, {"gap", gaps[i]}});
    for (auto& r : nu_rows)
        t.rows.push_back(std::move(r));
    return t;
}

inline EffectsReport effects_report(const RunConfig& c)
{
    const UnitScales au = UnitScales::atomic();
    const UnitScales ev = UnitScales::electron_volt();
    // Defaults follow the Planck-length and R = 1e36 a1 estimates.
    const Curvature k = c.kappa.empty() && !c.ratio ? Curvature::from_radius(1e36) : c.curvature();
    const MinimalLength len = c.length(au, MinimalLength::planck(au));
    EffectsReport e;
    e.kappa = k.value();
    e.minimal_length = len.ratio();
    e.level = c.level.value_or(c.n ? double(*c.n) : 2.0);
    e.planck_Q = planck_Q(au);
    e.curvature_relative = curvature_relative_effect(e.level, k, au);
    e.ml_relative = ml_relative_effect(e.level, len);
    e.crossover_level = e.crossover_relative = std::numeric_limits<double>::quiet_NaN();
    if (k.value() != 0 && len.ratio() > 0) {
        try {
            const auto x = crossover_level(k, len, au);
            e.crossover_level = x.level;
            e.crossover_relative = x.relative_magnitude;
        } catch (const domain_error&) {
        }
    }
    e.transition_level = e.curvature_relative_at_transition = std::numeric_limits<double>::quiet_NaN();
    if (k.value() > 0) {
        e.transition_level = transition_level(k, au);
        e.curvature_relative_at_transition = curvature_relative_effect(e.transition_level, k, au);
    }
    e.precision_ev = c.precision_ev;
    const auto bound = length_bound_from_precision(c.precision_ev, ev);
    e.length_bound_ratio = bound.ratio();
    e.length_bound_m = bound.meters(ev);
    return e;
}

inline Table cmd_effects(const RunConfig& c)
{
    const EffectsReport e = effects_report(c);
    Table t;
    t.metadata = detail::base_metadata(c);
    t.metadata["energy_unit"] = "dimensionless";
    t.columns = {"quantity", "value"};
    const json j = e;
    for (const auto& [key, v] : j.items())
        t.rows.push_back(json{{"quantity", key}, {"value", v}});
    return t;
}

/// Runs one invocation; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const CLI::CallForHelp&) {
        out << "usage: curvedh <spectrum|wavefunction|validate|limits|effects> [options]\n"
               "  --kappa <k a1^2> | --ratio <R/a1>   curvature (--kappa repeatable for validate)\n"
               "  --nmax N, -n N, -l L                quantum numbers\n"
               "  --minimal-length <L/a1|planck>      minimal length\n"
               "  --precision-ev E, --level n         effects inputs\n"
               "  --grid-n N, --rmax R                grid controls\n"
               "  --units atomic|ev, --format csv|json, --out PATH, --config PATH\n"
               "  environment: "
            << config_env_var << " names a default config file\n";
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config_error;
    }

    Table table;
    int status = exit_code::ok;
    try {
        if (cfg.command == "spectrum")
            table = cmd_spectrum(cfg);
        else if (cfg.command == "wavefunction")
            table = cmd_wavefunction(cfg);
        else if (cfg.command == "validate") {
            auto [t, all] = cmd_validate(cfg);
            table = std::move(t);
            if (!all)
                status = exit_code::validation_failed;
        } else if (cfg.command == "limits")
            table = cmd_limits(cfg);
        else
            table = cmd_effects(cfg);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const unbound_level_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::unbound_level;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << cfg.out << "'\n";
            return exit_code::config_error;
        }
        sink = &file;
    }
    if (cfg.format == "json")
        write_json(*sink, table);
    else
        write_csv(*sink, table);
    if (status == exit_code::validation_failed)
        err << "validation failed: some level exceeds relative error " << validation_error_tol << " or residual "
            << validation_residual_tol << '\n';
    return status;
}

} // namespace curvedh::cli
