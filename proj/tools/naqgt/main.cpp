#include "naqgt_app/commands.hpp"
#include "naqgt_app/run_config.hpp"

#include "naqgt/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace {

template <class T>
void override_with(T& field, const std::optional<T>& flag)
{
    if (flag) field = *flag;
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace naqgt;
    CLI::App app{"Quantum geometry of globally degenerate four-band Dirac models"};
    app.set_version_flag("--version", NAQGT_VERSION);

    std::string command;
    std::optional<std::string> config_path, family, out, gauge, observable, entry, sweep;
    std::optional<int> n, grid, n_theta, n_phi, ny, n_ky, threads, sweep_points;
    std::optional<double> mass, t, radius, kz, kx, v, dt, mass_min, mass_max;
    std::optional<std::vector<int>> alpha;

    app.add_option("command", command, "bands | invariants | qgt-map | wilson | sweep | dynamics | selfcheck")
        ->required();
    app.add_option("--config", config_path, "JSON file whose keys mirror the flag names; flags override it");
    app.add_option("--model,--family", family, "cp_lattice, c2t_lattice, cp_effective_plus, ..., c2t_sphere_minus");
    app.add_option("--n", n, "winding order of the Dirac point (1 to 8)");
    app.add_option("--alpha", alpha, "sign triple x,y,z, each +1 or -1")->delimiter(',')->expected(3);
    app.add_option("--mass", mass, "mass M_z (m_z for C2T)");
    app.add_option("--t", t, "hopping amplitude");
    app.add_option("--radius", radius, "sphere radius q");
    app.add_option("--kz", kz, "k_z of the slice");
    app.add_option("--grid", grid, "points per axis of BZ grids; k_x samples for wilson and slab");
    app.add_option("--n-theta", n_theta, "theta cells on sphere grids");
    app.add_option("--n-phi", n_phi, "phi cells on sphere grids");
    app.add_option("--ny", ny, "slab thickness for bands; 0 means bulk");
    app.add_option("--sweep", sweep, "slab sweep momentum: kx or kz");
    app.add_option("--kx", kx, "fixed k_x of a k_z slab sweep");
    app.add_option("--n-ky", n_ky, "k_y links per Wilson loop");
    app.add_option("--v", v, "final ramp velocity");
    app.add_option("--dt", dt, "integrator time step");
    app.add_option("--out", out, "output path; the manifest goes to <out>.manifest.json");
    app.add_option("--threads", threads, "worker threads, 0 for all cores");
    app.add_option("--gauge", gauge, "auto | complex | real");
    app.add_option("--observable", observable, "berry | metric");
    app.add_option("--entry", entry, "band entry ij of the 2x2 block: 11, 12, 21 or 22");
    app.add_option("--mass-min", mass_min, "first mass of a sweep");
    app.add_option("--mass-max", mass_max, "last mass of a sweep");
    app.add_option("--sweep-points", sweep_points, "number of masses in a sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    app::RunConfig cfg;
    try {
        if (config_path) {
            std::ifstream f(*config_path);
            if (!f) throw ValidationError("cannot read config file '" + *config_path + "'");
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(f);
            } catch (const nlohmann::json::exception& e) {
                throw ValidationError(std::string("config is not valid JSON: ") + e.what());
            }
            app::apply_json(cfg, j);
        }
        cfg.command = app::command_from_string(command);
        if (family) cfg.model.family = family_from_string(*family);
        override_with(cfg.model.n, n);
        if (alpha) cfg.model.alpha = {(*alpha)[0], (*alpha)[1], (*alpha)[2]};
        override_with(cfg.model.mass, mass);
        override_with(cfg.model.t, t);
        override_with(cfg.model.radius, radius);
        override_with(cfg.kz, kz);
        override_with(cfg.grid, grid);
        override_with(cfg.n_theta, n_theta);
        override_with(cfg.n_phi, n_phi);
        override_with(cfg.ny, ny);
        override_with(cfg.sweep, sweep);
        override_with(cfg.kx, kx);
        override_with(cfg.n_ky, n_ky);
        override_with(cfg.v, v);
        override_with(cfg.dt, dt);
        override_with(cfg.out, out);
        override_with(cfg.threads, threads);
        override_with(cfg.gauge, gauge);
        override_with(cfg.observable, observable);
        override_with(cfg.entry, entry);
        override_with(cfg.mass_min, mass_min);
        override_with(cfg.mass_max, mass_max);
        override_with(cfg.sweep_points, sweep_points);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    }
    try {
        return app::dispatch(cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
