#include "naqgt_app/commands.hpp"

#include "naqgt/clifford.hpp"
#include "naqgt/dynamics.hpp"
#include "naqgt/errors.hpp"
#include "naqgt/parallel.hpp"
#include "naqgt/qgt.hpp"
#include "naqgt/slab.hpp"
#include "naqgt/topology.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>

namespace naqgt::app {

namespace {

using nlohmann::json;
constexpr double pi = std::numbers::pi;

std::ofstream open_output(const std::string& path)
{
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open output file '" + path + "'");
    f << std::setprecision(12);
    return f;
}

void write_json(const std::string& path, const json& j)
{
    std::ofstream f = open_output(path);
    f << j.dump(2) << '\n';
}

void require_lattice(const RunConfig& cfg)
{
    if (!is_lattice(cfg.model.family))
        throw ValidationError(to_string(cfg.command) + " needs a lattice family (cp_lattice or c2t_lattice)");
}

CommandResult cmd_bands(const RunConfig& cfg)
{
    CommandResult r;
    const std::string path = cfg.output_path();
    std::ofstream f = open_output(path);
    if (cfg.ny > 0) {
        // open boundary along y; k_x or k_z swept over the zone
        require_lattice(cfg);
        const std::vector<double> ks = bz_midpoints(cfg.grid);
        const int axis = cfg.sweep == "kx" ? 0 : 2;
        const auto spectra = slab_sweep(cfg.model, 1, cfg.ny, Vec3(cfg.kx, 0.0, cfg.kz), axis, ks, cfg.threads);
        f << "sweep_k,index,energy,edge_weight\n";
        for (std::size_t s = 0; s < spectra.size(); ++s)
            for (Eigen::Index e = 0; e < spectra[s].energies.size(); ++e)
                f << ks[s] << ',' << e << ',' << spectra[s].energies[e] << ',' << spectra[s].edge_weight[e] << '\n';
        r.summary["slab_sites"] = cfg.ny;
        r.summary["sweep"] = cfg.sweep;
    } else {
        const bool sphere = is_sphere(cfg.model.family);
        const int n0 = sphere ? cfg.n_theta : cfg.grid, n1 = sphere ? cfg.n_phi : cfg.grid;
        std::vector<double> lower(static_cast<std::size_t>(n0) * n1), upper(lower.size());
        parallel_for(
            lower.size(),
            [&](std::size_t idx) {
                const Vec3 p = sphere ? Vec3(pi * (idx / n1 + 0.5) / n0, 2.0 * pi * (idx % n1 + 0.5) / n1, 0.0)
                                      : Vec3(bz_midpoints(n0)[idx / n1], bz_midpoints(n1)[idx % n1], cfg.kz);
                const EighResult e = dense_eigh(hamiltonian(cfg.model, p));
                lower[idx] = e.values[0];
                upper[idx] = e.values[3];
            },
            cfg.threads);
        f << (sphere ? "theta,phi,kz,e_lower,e_upper\n" : "kx,ky,kz,e_lower,e_upper\n");
        const std::vector<double> k0 = bz_midpoints(n0), k1 = bz_midpoints(n1);
        for (std::size_t idx = 0; idx < lower.size(); ++idx) {
            const double a = sphere ? pi * (idx / n1 + 0.5) / n0 : k0[idx / n1];
            const double b = sphere ? 2.0 * pi * (idx % n1 + 0.5) / n1 : k1[idx % n1];
            f << a << ',' << b << ',' << cfg.kz << ',' << lower[idx] << ',' << upper[idx] << '\n';
        }
    }
    r.outputs.push_back(path);
    return r;
}

CommandResult cmd_invariants(const RunConfig& cfg)
{
    CommandResult r;
    json j;
    j["model"] = to_json(cfg.model);
    j["kz"] = cfg.kz;
    const ModelSpec& m = cfg.model;
    if (is_sphere(m.family)) {
        j["charge"] = {
            {"curvature", monopole_charge(m, cfg.n_theta, cfg.n_phi, Method::curvature_sum, cfg.threads).value},
            {"metric", monopole_charge(m, cfg.n_theta, cfg.n_phi, Method::metric_sign, cfg.threads).value}};
    } else {
        require_lattice(cfg);
        if (is_cp(m.family)) {
            j["chern"] = {{"curvature", chern_number(m, cfg.kz, cfg.grid, Method::curvature_sum, cfg.threads).value},
                          {"metric", chern_number(m, cfg.kz, cfg.grid, Method::metric_sign, cfg.threads).value},
                          {"plaquette", chern_number(m, cfg.kz, cfg.grid, Method::plaquette_oracle, cfg.threads).value}};
            j["euler"] = nullptr;
        } else {
            j["chern"] = nullptr;
            j["euler"] = {{"curvature", euler_class(m, cfg.kz, cfg.grid, Method::curvature_sum, cfg.threads).value},
                          {"metric", euler_class(m, cfg.kz, cfg.grid, Method::metric_sign, cfg.threads).value}};
        }
        j["winding"] = winding_number(wilson_spectrum(m, cfg.kz, std::max(cfg.grid, 100), cfg.n_ky, cfg.threads));
    }
    const std::string path = cfg.output_path();
    write_json(path, j);
    r.outputs.push_back(path);
    r.summary = j;
    return r;
}

CommandResult cmd_qgt_map(const RunConfig& cfg)
{
    require_lattice(cfg);
    CommandResult r;
    const std::vector<double> ks = bz_midpoints(cfg.grid);
    const std::size_t n = ks.size() * ks.size();
    std::vector<QGTBlock> blocks(n);
    std::vector<GeometryScalars> scalars(n);
    const GaugeMode mode = cfg.gauge_mode();
    parallel_for(
        n,
        [&](std::size_t idx) {
            const Vec3 p(ks[idx / ks.size()], ks[idx % ks.size()], cfg.kz);
            blocks[idx] = qgt_block(cfg.model, p, 0, 1, mode);
            scalars[idx] = geometry_scalars(cfg.model, p, 0, 1);
        },
        cfg.threads);
    const std::string path = cfg.output_path();
    std::ofstream f = open_output(path);
    f << "kx,ky";
    for (const char* name : {"g", "f"})
        for (const char* e : {"11", "12", "21", "22"}) f << ',' << name << e << "_re," << name << e << "_im";
    f << ",tr_g,tr_f,det_g_mat,eu\n";
    for (std::size_t idx = 0; idx < n; ++idx) {
        const QGTBlock& b = blocks[idx];
        f << ks[idx / ks.size()] << ',' << ks[idx % ks.size()];
        for (const Mat2* m : {&b.g, &b.f})
            for (int e = 0; e < 4; ++e) f << ',' << (*m)(e / 2, e % 2).real() << ',' << (*m)(e / 2, e % 2).imag();
        const GeometryScalars& s = scalars[idx];
        f << ',' << s.tr_g[1] << ',' << s.tr_f << ',' << s.det_g_mat << ',' << s.eu << '\n';
    }
    r.outputs.push_back(path);
    return r;
}

CommandResult cmd_wilson(const RunConfig& cfg)
{
    require_lattice(cfg);
    CommandResult r;
    const WilsonResult w = wilson_spectrum(cfg.model, cfg.kz, std::max(cfg.grid, 100), cfg.n_ky, cfg.threads);
    const std::string path = cfg.output_path();
    std::ofstream f = open_output(path);
    f << "kx,phase_1,phase_2\n";
    for (std::size_t s = 0; s < w.kx_samples.size(); ++s)
        f << w.kx_samples[s] << ',' << w.eigenphases[s][0] << ',' << w.eigenphases[s][1] << '\n';
    r.summary["winding"] = winding_number(w);
    r.outputs.push_back(path);
    return r;
}

CommandResult cmd_sweep(const RunConfig& cfg)
{
    require_lattice(cfg);
    CommandResult r;
    std::vector<double> masses(cfg.sweep_points);
    for (int i = 0; i < cfg.sweep_points; ++i)
        masses[i] = cfg.mass_min + (cfg.mass_max - cfg.mass_min) * i / (cfg.sweep_points - 1);
    const auto rows = phase_sweep(cfg.model, masses, cfg.kz, cfg.grid, cfg.threads);
    const std::string path = cfg.output_path();
    std::ofstream f = open_output(path);
    f << "mass,invariant,rounded\n";
    for (const SweepRow& row : rows) f << row.mass << ',' << row.invariant.value << ',' << row.invariant.rounded << '\n';
    r.summary["transitions"] = sweep_transitions(rows);
    r.summary["invariant"] = is_cp(cfg.model.family) ? "chern" : "euler";
    r.outputs.push_back(path);
    return r;
}

CommandResult cmd_dynamics(const RunConfig& cfg)
{
    CommandResult r;
    DynamicOptions opt = default_dynamic_options(cfg.model);
    opt.v = cfg.v;
    opt.dt = cfg.dt;
    opt.mode = cfg.gauge_mode();
    const Observable obs = cfg.observable == "berry" ? Observable::berry : Observable::metric;
    const std::string path = cfg.output_path();
    if (is_sphere(cfg.model.family)) {
        ModelSpec m = cfg.model;
        m.radius = 1.0;
        const InvariantResult inv = dynamic_invariant(m, cfg.n_theta, cfg.n_phi, obs, opt, cfg.threads);
        json j = {{"model", to_json(m)},
                  {"observable", cfg.observable},
                  {"invariant", is_cp(m.family) ? "chern" : "euler"},
                  {"value", inv.value},
                  {"rounded", inv.rounded},
                  {"grid", {inv.n_mu, inv.n_nu}}};
        write_json(path, j);
        r.summary = j;
    } else {
        require_lattice(cfg);
        const int i = cfg.entry[0] - '1', jj = cfg.entry[1] - '1';
        const auto points = obs == Observable::berry ? extract_berry(cfg.model, cfg.kz, cfg.grid, i, jj, opt, cfg.threads)
                                                     : extract_metric(cfg.model, cfg.kz, cfg.grid, i, jj, opt, cfg.threads);
        const std::string name = std::string(obs == Observable::berry ? "F" : "g") + "_xy^" + cfg.entry;
        std::ofstream f = open_output(path);
        f << "kx,ky,component,analytic,dynamic,gap\n";
        for (const MapPoint& p : points) {
            f << p.kx << ',' << p.ky << ",Re " << name << ',' << p.analytic.real() << ',' << p.dynamic.real() << ','
              << p.gap << '\n';
            f << p.kx << ',' << p.ky << ",Im " << name << ',' << p.analytic.imag() << ',' << p.dynamic.imag() << ','
              << p.gap << '\n';
        }
    }
    r.summary["ramp_start_offset"] = "pi/2 behind the target on every ramped direction";
    r.summary["time_units"] = "hbar = Omega_0 = 1";
    r.outputs.push_back(path);
    return r;
}

CommandResult cmd_selfcheck(const RunConfig& cfg, std::ostream& log)
{
    CommandResult r;
    json lines = json::array();
    for (const CheckLine& c : run_selfcheck(cfg.threads)) {
        log << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.measured << " vs " << c.tolerance << ")\n";
        lines.push_back({{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"tolerance", c.tolerance}});
        r.ok = r.ok && c.pass;
    }
    const std::string path = cfg.output_path();
    write_json(path, {{"checks", lines}, {"pass", r.ok}});
    r.outputs.push_back(path);
    return r;
}

}  // namespace

std::vector<CheckLine> run_selfcheck(int threads)
{
    std::vector<CheckLine> out;
    const CliffordSet set = build_clifford_set();
    out.push_back({"clifford anticommutators", false, anticommutator_check(set), 0.0});
    double table = 0.0;
    const auto tab = tabulated_commutators();
    for (int k = 0; k < 10; ++k) table = std::max(table, max_abs(set.comm[k] - tab[k]));
    out.push_back({"clifford commutator table", false, table, 0.0});

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-pi, pi);
    std::vector<Vec3> pts(200);
    for (Vec3& p : pts) p = Vec3(u(rng), u(rng), u(rng));

    double degeneracy = 0.0, trace = 0.0, det = 0.0;
    for (Family f : {Family::cp_lattice, Family::c2t_lattice})
        for (int n : {1, 2}) {
            ModelSpec m;
            m.family = f;
            m.n = n;
            degeneracy = std::max(degeneracy,
                                  check_global_degeneracy([&](const Vec3& k) { return hamiltonian(m, k); }, pts));
            std::vector<double> t(pts.size()), d(pts.size());
            parallel_for(
                pts.size(),
                [&](std::size_t i) {
                    const GeometryScalars s = geometry_scalars(m, pts[i], 0, 1);
                    t[i] = std::max({std::abs(s.tr_g[0] - trace_metric(m, pts[i], 0, 0)),
                                     std::abs(s.tr_g[1] - trace_metric(m, pts[i], 0, 1)),
                                     std::abs(s.tr_g[2] - trace_metric(m, pts[i], 1, 1))});
                    const auto [lhs, rhs] = det_relation(m, pts[i], 0, 1);
                    d[i] = std::abs(lhs - rhs);
                },
                threads);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                trace = std::max(trace, t[i]);
                det = std::max(det, d[i]);
            }
        }
    out.push_back({"global degeneracy", false, degeneracy, 1e-12});
    out.push_back({"trace-metric identity", false, trace, 1e-8});
    out.push_back({"determinant relation", false, det, 1e-8});
    for (CheckLine& c : out) c.pass = c.measured <= c.tolerance;
    return out;
}

CommandResult run_command(const RunConfig& given, std::ostream& log)
{
    const RunConfig cfg = given.resolved();
    cfg.validate();
    set_default_threads(cfg.threads);
    switch (cfg.command) {
    case Command::bands: return cmd_bands(cfg);
    case Command::invariants: return cmd_invariants(cfg);
    case Command::qgt_map: return cmd_qgt_map(cfg);
    case Command::wilson: return cmd_wilson(cfg);
    case Command::sweep: return cmd_sweep(cfg);
    case Command::dynamics: return cmd_dynamics(cfg);
    case Command::selfcheck: return cmd_selfcheck(cfg, log);
    }
    throw ValidationError("unknown command");
}

std::string manifest_path(const RunConfig& cfg) { return cfg.output_path() + ".manifest.json"; }

int dispatch(const RunConfig& given, std::ostream& log, std::ostream& err)
{
    const RunConfig cfg = given.resolved();
    const auto t0 = std::chrono::steady_clock::now();
    json manifest;
    manifest["config"] = to_json(cfg);
    manifest["version"] = NAQGT_VERSION;
    manifest["threads_used"] = resolve_threads(cfg.threads);
    int status = 0;
    try {
        manifest["gauge_mode"] = cfg.gauge_mode() == GaugeMode::real_orthogonal ? "real_orthogonal" : "complex_phase";
        const CommandResult r = run_command(cfg, log);
        manifest["outputs"] = r.outputs;
        manifest["summary"] = r.summary;
        status = r.ok ? 0 : 1;
        if (!r.summary.empty()) log << r.summary.dump() << '\n';
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        manifest["error"] = e.what();
        status = 2;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        manifest["error"] = e.what();
        status = 3;
    }
    manifest["exit_status"] = status;
    manifest["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        write_json(manifest_path(cfg), manifest);
    } catch (const Error& e) {
        err << "could not write manifest: " << e.what() << '\n';
        if (status == 0) status = 2;
    }
    return status;
}

}  // namespace naqgt::app
