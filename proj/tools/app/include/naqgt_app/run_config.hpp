#pragma once

#include "naqgt/models.hpp"
#include "naqgt/spectral.hpp"

#include "json.hpp"

#include <string>

namespace naqgt::app {

enum class Command { bands, invariants, qgt_map, wilson, sweep, dynamics, selfcheck };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

// Every field has a value; the manifest echoes all of them, defaults included.
struct RunConfig {
    Command command = Command::selfcheck;
    ModelSpec model;
    double kz = 0.0;
    // 0 selects the command's default grid, see resolved()
    int grid = 0;
    int n_theta = 0;
    int n_phi = 0;
    int ny = 0;
    // slab spectra: swept momentum (kx or kz) and the fixed k_x used when sweeping k_z
    std::string sweep = "kx";
    double kx = 0.0;
    int n_ky = 200;
    double v = 0.1;
    double dt = 1e-3;
    std::string out;
    int threads = 0;
    std::string gauge = "auto";
    std::string observable = "berry";
    std::string entry = "11";
    double mass_min = -4.0;
    double mass_max = 4.0;
    int sweep_points = 160;

    // Copy with every command-dependent default filled in.
    RunConfig resolved() const;
    void validate() const;
    GaugeMode gauge_mode() const;
    // Output path with the command's default extension when --out was not given.
    std::string output_path() const;
};

nlohmann::json to_json(const ModelSpec& m);
nlohmann::json to_json(const RunConfig& c);

// Reads keys mirroring the flag names; unknown keys raise ValidationError.
void apply_json(RunConfig& c, const nlohmann::json& j);
RunConfig config_from_json(const nlohmann::json& j);

}  // namespace naqgt::app
