#include "naqgt_app/run_config.hpp"

#include "naqgt/errors.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace naqgt::app {

namespace {

constexpr const char* command_names[] = {"bands", "invariants", "qgt-map", "wilson", "sweep", "dynamics", "selfcheck"};

void require(bool ok, const std::string& what)
{
    if (!ok) throw ValidationError(what);
}

template <class T>
T read(const nlohmann::json& j, const std::string& key)
{
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config key '" + key + "': " + e.what());
    }
}

}  // namespace

std::string to_string(Command c) { return command_names[static_cast<int>(c)]; }

Command command_from_string(const std::string& name)
{
    for (int i = 0; i < 7; ++i)
        if (name == command_names[i]) return static_cast<Command>(i);
    throw ValidationError("unknown command '" + name + "'");
}

RunConfig RunConfig::resolved() const
{
    RunConfig c = *this;
    const bool dyn = command == Command::dynamics;
    if (c.grid == 0) c.grid = dyn ? 41 : 201;
    if (c.n_theta == 0) c.n_theta = dyn ? 24 : 200;
    if (c.n_phi == 0) c.n_phi = dyn ? 8 : 400;
    return c;
}

void RunConfig::validate() const
{
    model.validate();
    require(std::isfinite(kz), "kz must be finite");
    require(grid >= 2 && grid <= 2001, "grid must lie in [2, 2001]");
    require(n_theta >= 2 && n_theta <= 4000, "n-theta must lie in [2, 4000]");
    require(n_phi >= 2 && n_phi <= 8000, "n-phi must lie in [2, 8000]");
    require(ny >= 0 && ny <= 256, "ny must lie in [0, 256]");
    require(sweep == "kx" || sweep == "kz", "sweep must be kx or kz");
    require(std::isfinite(kx), "kx must be finite");
    require(n_ky >= 8 && n_ky <= 4000, "n-ky must lie in [8, 4000]");
    require(v > 0.0 && v <= 1.0, "v must lie in (0, 1]");
    require(dt > 0.0 && dt <= 2.0 * std::numbers::pi * 1e-3, "dt must lie in (0, 2 pi 1e-3]");
    require(threads >= 0 && threads <= 1024, "threads must lie in [0, 1024]");
    require(gauge == "auto" || gauge == "complex" || gauge == "real", "gauge must be auto, complex or real");
    require(observable == "berry" || observable == "metric", "observable must be berry or metric");
    require(entry == "11" || entry == "12" || entry == "21" || entry == "22", "entry must be 11, 12, 21 or 22");
    require(std::isfinite(mass_min) && std::isfinite(mass_max) && mass_min < mass_max, "need mass-min < mass-max");
    require(sweep_points >= 2 && sweep_points <= 10000, "sweep-points must lie in [2, 10000]");
    if (gauge == "real") require(!is_cp(model.family), "CP models have no real gauge");
}

GaugeMode RunConfig::gauge_mode() const
{
    if (gauge == "complex") return GaugeMode::complex_phase;
    if (gauge == "real") return GaugeMode::real_orthogonal;
    return default_gauge_mode(model);
}

std::string RunConfig::output_path() const
{
    if (!out.empty()) return out;
    const bool json_out = command == Command::invariants || command == Command::selfcheck ||
                          (command == Command::dynamics && is_sphere(model.family));
    return to_string(command) + (json_out ? ".json" : ".csv");
}

nlohmann::json to_json(const ModelSpec& m)
{
    return {{"family", to_string(m.family)}, {"n", m.n},      {"alpha", m.alpha},
            {"mass", m.mass},                {"t", m.t},      {"radius", m.radius}};
}

nlohmann::json to_json(const RunConfig& c)
{
    nlohmann::json j = to_json(c.model);
    j["command"] = to_string(c.command);
    j["kz"] = c.kz;
    j["grid"] = c.grid;
    j["n-theta"] = c.n_theta;
    j["n-phi"] = c.n_phi;
    j["ny"] = c.ny;
    j["sweep"] = c.sweep;
    j["kx"] = c.kx;
    j["n-ky"] = c.n_ky;
    j["v"] = c.v;
    j["dt"] = c.dt;
    j["out"] = c.output_path();
    j["threads"] = c.threads;
    j["gauge"] = c.gauge;
    j["observable"] = c.observable;
    j["entry"] = c.entry;
    j["mass-min"] = c.mass_min;
    j["mass-max"] = c.mass_max;
    j["sweep-points"] = c.sweep_points;
    return j;
}

void apply_json(RunConfig& c, const nlohmann::json& j)
{
    require(j.is_object(), "config must be a JSON object");
    static const std::set<std::string> known = {
        "command", "model",  "family",  "n",     "alpha", "mass",       "t",     "radius",   "kz",
        "grid",    "sweep", "kx", "n-theta", "n-phi",  "ny",    "n-ky",  "v",          "dt",    "out",      "threads",
        "gauge",   "observable", "entry", "mass-min", "mass-max", "sweep-points"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ValidationError("unknown config key '" + key + "'");
    require(!(j.contains("model") && j.contains("family")), "config sets both model and family");

    if (j.contains("command")) c.command = command_from_string(read<std::string>(j, "command"));
    if (j.contains("model")) c.model.family = family_from_string(read<std::string>(j, "model"));
    if (j.contains("family")) c.model.family = family_from_string(read<std::string>(j, "family"));
    if (j.contains("n")) c.model.n = read<int>(j, "n");
    if (j.contains("alpha")) c.model.alpha = read<std::array<int, 3>>(j, "alpha");
    if (j.contains("mass")) c.model.mass = read<double>(j, "mass");
    if (j.contains("t")) c.model.t = read<double>(j, "t");
    if (j.contains("radius")) c.model.radius = read<double>(j, "radius");
    if (j.contains("kz")) c.kz = read<double>(j, "kz");
    if (j.contains("grid")) c.grid = read<int>(j, "grid");
    if (j.contains("n-theta")) c.n_theta = read<int>(j, "n-theta");
    if (j.contains("n-phi")) c.n_phi = read<int>(j, "n-phi");
    if (j.contains("ny")) c.ny = read<int>(j, "ny");
    if (j.contains("sweep")) c.sweep = read<std::string>(j, "sweep");
    if (j.contains("kx")) c.kx = read<double>(j, "kx");
    if (j.contains("n-ky")) c.n_ky = read<int>(j, "n-ky");
    if (j.contains("v")) c.v = read<double>(j, "v");
    if (j.contains("dt")) c.dt = read<double>(j, "dt");
    if (j.contains("out")) c.out = read<std::string>(j, "out");
    if (j.contains("threads")) c.threads = read<int>(j, "threads");
    if (j.contains("gauge")) c.gauge = read<std::string>(j, "gauge");
    if (j.contains("observable")) c.observable = read<std::string>(j, "observable");
    if (j.contains("entry")) c.entry = read<std::string>(j, "entry");
    if (j.contains("mass-min")) c.mass_min = read<double>(j, "mass-min");
    if (j.contains("mass-max")) c.mass_max = read<double>(j, "mass-max");
    if (j.contains("sweep-points")) c.sweep_points = read<int>(j, "sweep-points");
}

RunConfig config_from_json(const nlohmann::json& j)
{
    RunConfig c;
    apply_json(c, j);
    return c;
}

}  // namespace naqgt::app
