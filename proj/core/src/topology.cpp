#include "naqgt/topology.hpp"

#include "naqgt/errors.hpp"
#include "naqgt/parallel.hpp"
#include "naqgt/qgt.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <numbers>

namespace naqgt {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double min_slice_gap = 1e-3;

double sgn(double x, double zero = 1e-12) { return std::abs(x) < zero ? 0.0 : (x > 0.0 ? 1.0 : -1.0); }

double wrap(double x)
{
    x = std::remainder(x, 2.0 * pi);
    return x <= -pi ? x + 2.0 * pi : x;
}

void require_gap(const ModelSpec& spec, const Vec3& p)
{
    if (2.0 * bloch_value(spec, p).norm() < min_slice_gap)
        throw GapClosed("band gap closes on the integration grid near (" + std::to_string(p[0]) + ", " +
                        std::to_string(p[1]) + ", " + std::to_string(p[2]) + ")");
}

// Fixed-order sum so the result does not depend on how the grid was split across threads.
double ordered_sum(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double slice_integral(const ModelSpec& spec, double kz, int grid, int threads,
                      const std::function<double(const GeometryScalars&)>& density)
{
    const std::vector<double> ks = bz_midpoints(grid);
    std::vector<double> vals(static_cast<std::size_t>(grid) * grid);
    parallel_for(
        vals.size(),
        [&](std::size_t idx) {
            const Vec3 p(ks[idx / grid], ks[idx % grid], kz);
            require_gap(spec, p);
            vals[idx] = density(geometry_scalars(spec, p, 0, 1));
        },
        threads);
    const double cell = (2.0 * pi / grid) * (2.0 * pi / grid);
    return ordered_sum(vals) * cell / (2.0 * pi);
}

double plaquette_chern(const ModelSpec& spec, double kz, int grid, int threads)
{
    const std::vector<double> ks = bz_midpoints(grid);
    const std::size_t n = static_cast<std::size_t>(grid);
    std::vector<Frame> frames(n * n);
    parallel_for(
        frames.size(),
        [&](std::size_t idx) {
            const Vec3 p(ks[idx / n], ks[idx % n], kz);
            require_gap(spec, p);
            frames[idx] = eigensystem(hamiltonian(spec, p)).ground;
        },
        threads);
    auto at = [&](std::size_t i, std::size_t j) -> const Frame& { return frames[(i % n) * n + (j % n)]; };
    auto link = [](const Frame& a, const Frame& b) {
        const cplx u = (a.adjoint() * b).determinant();
        const double m = std::abs(u);
        if (m < 1e-12) throw ResolutionError("plaquette link overlap vanishes; refine the grid");
        return u / m;
    };
    std::vector<double> flux(n * n);
    parallel_for(
        flux.size(),
        [&](std::size_t idx) {
            const std::size_t i = idx / n, j = idx % n;
            const cplx ux = link(at(i, j), at(i + 1, j));
            const cplx uy_next = link(at(i + 1, j), at(i + 1, j + 1));
            const cplx ux_up = link(at(i, j + 1), at(i + 1, j + 1));
            const cplx uy = link(at(i, j), at(i, j + 1));
            // sign matches the curvature convention F = i(Q - Q^dag)
            flux[idx] = -std::arg(ux * uy_next / (ux_up * uy));
        },
        threads);
    return ordered_sum(flux) / (2.0 * pi);
}

void require_lattice(const ModelSpec& spec)
{
    spec.validate();
    if (!is_lattice(spec.family)) throw ValidationError("slice invariants need a lattice family");
}

}  // namespace

std::string to_string(Method m)
{
    switch (m) {
    case Method::curvature_sum: return "curvature_sum";
    case Method::metric_sign: return "metric_sign";
    case Method::plaquette_oracle: return "plaquette_oracle";
    case Method::dynamic: return "dynamic";
    }
    return "unknown";
}

InvariantResult make_invariant(double value, int n_mu, int n_nu, Method method)
{
    return {value, n_mu, n_nu, method, std::lround(value)};
}

std::vector<double> bz_midpoints(int n)
{
    if (n < 1) throw ValidationError("grid size must be positive");
    std::vector<double> k(n);
    for (int i = 0; i < n; ++i) k[i] = -pi + (i + 0.5) * 2.0 * pi / n;
    return k;
}

InvariantResult chern_number(const ModelSpec& spec, double kz, int grid, Method method, int threads)
{
    require_lattice(spec);
    double value = 0.0;
    switch (method) {
    case Method::curvature_sum:
        value = slice_integral(spec, kz, grid, threads, [](const GeometryScalars& s) { return s.tr_f; });
        break;
    case Method::metric_sign:
        value = slice_integral(spec, kz, grid, threads, [](const GeometryScalars& s) {
            return sgn(s.tr_f) * std::sqrt(std::max(0.0, s.det_g_mat));
        });
        break;
    case Method::plaquette_oracle: value = plaquette_chern(spec, kz, grid, threads); break;
    default: throw ValidationError("chern_number: unsupported method " + to_string(method));
    }
    return make_invariant(value, grid, grid, method);
}

InvariantResult euler_class(const ModelSpec& spec, double kz, int grid, Method method, int threads)
{
    require_lattice(spec);
    if (is_cp(spec.family)) throw GaugeError("Euler class needs a real (C2T) model");
    double value = 0.0;
    switch (method) {
    case Method::curvature_sum:
        value = slice_integral(spec, kz, grid, threads, [](const GeometryScalars& s) { return s.eu; });
        break;
    case Method::metric_sign:
        value = slice_integral(spec, kz, grid, threads, [](const GeometryScalars& s) {
            return sgn(s.eu) * std::sqrt(std::max(0.0, s.det_g_mat)) / 2.0;
        });
        break;
    default: throw ValidationError("euler_class: unsupported method " + to_string(method));
    }
    return make_invariant(value, grid, grid, method);
}

InvariantResult monopole_charge(const ModelSpec& spec, int n_theta, int n_phi, Method method, int threads)
{
    spec.validate();
    if (!is_sphere(spec.family)) throw ValidationError("monopole_charge needs a sphere family");
    if (n_theta < 1 || n_phi < 1) throw ValidationError("sphere grid must be positive");
    if (method != Method::curvature_sum && method != Method::metric_sign)
        throw ValidationError("monopole_charge: unsupported method " + to_string(method));
    const bool cp = is_cp(spec.family);
    const double dth = pi / n_theta, dph = 2.0 * pi / n_phi;
    std::vector<double> vals(static_cast<std::size_t>(n_theta) * n_phi);
    parallel_for(
        vals.size(),
        [&](std::size_t idx) {
            const Vec3 p((idx / n_phi + 0.5) * dth, (idx % n_phi + 0.5) * dph, 0.0);
            const GeometryScalars s = geometry_scalars(spec, p, 0, 1);
            const double curv = cp ? s.tr_f : s.eu;
            const double scale = cp ? 1.0 : 0.5;
            vals[idx] = method == Method::curvature_sum ? curv
                                                        : sgn(curv) * scale * std::sqrt(std::max(0.0, s.det_g_mat));
        },
        threads);
    return make_invariant(ordered_sum(vals) * dth * dph / (2.0 * pi), n_theta, n_phi, method);
}

Mat2 wilson_loop(const ModelSpec& spec, double kz, double kx, int n_ky, bool real_gauge)
{
    require_lattice(spec);
    if (n_ky < 4) throw ValidationError("wilson_loop needs at least 4 k_y steps");
    const GaugeMode mode = real_gauge ? GaugeMode::real_orthogonal : GaugeMode::complex_phase;
    if (real_gauge && is_cp(spec.family)) throw GaugeError("real-gauge Wilson loop needs a C2T model");
    std::vector<Frame> frames(n_ky);
    for (int l = 0; l < n_ky; ++l) {
        const Vec3 p(kx, -pi + l * 2.0 * pi / n_ky, kz);
        require_gap(spec, p);
        frames[l] = ground_states(spec, p, mode).ground;
    }
    Mat2 w = Mat2::Identity();
    for (int l = 0; l < n_ky; ++l) {
        const Frame& here = frames[l];
        const Frame& next = frames[(l + 1) % n_ky];
        w = polar_unitary(Mat2(next.adjoint() * here)) * w;
    }
    return w;
}

WilsonResult wilson_spectrum(const ModelSpec& spec, double kz, int n_kx, int n_ky, int threads)
{
    if (n_kx < 100) throw ValidationError("wilson_spectrum needs at least 100 k_x samples");
    const bool real = !is_cp(spec.family);
    WilsonResult r;
    r.kx_samples.resize(n_kx + 1);
    for (int j = 0; j <= n_kx; ++j) r.kx_samples[j] = -pi + j * 2.0 * pi / n_kx;
    std::vector<std::array<double, 2>> raw(n_kx + 1);
    parallel_for(
        raw.size(),
        [&](std::size_t j) {
            const Mat2 w = wilson_loop(spec, kz, r.kx_samples[j], n_ky, real);
            if (real) {
                const double theta = std::atan2(w(1, 0).real(), w(0, 0).real());
                raw[j] = {theta, wrap(-theta)};
            } else {
                Eigen::ComplexEigenSolver<Mat2> es(w);
                double a = std::arg(es.eigenvalues()[0]), b = std::arg(es.eigenvalues()[1]);
                if (a > b) std::swap(a, b);
                raw[j] = {a, b};
            }
        },
        threads);
    r.eigenphases.resize(raw.size());
    r.eigenphases[0] = raw[0];
    // the SO(2) angle is already a continuous label; only complex eigenphases need matching
    for (std::size_t j = 1; j < raw.size(); ++j) {
        if (real) {
            r.eigenphases[j] = raw[j];
            continue;
        }
        const auto& prev = r.eigenphases[j - 1];
        const auto& cur = raw[j];
        const double keep = std::abs(wrap(cur[0] - prev[0])) + std::abs(wrap(cur[1] - prev[1]));
        const double swap = std::abs(wrap(cur[1] - prev[0])) + std::abs(wrap(cur[0] - prev[1]));
        r.eigenphases[j] = swap < keep ? std::array<double, 2>{cur[1], cur[0]} : cur;
    }
    r.winding = winding_number(r);
    return r;
}

int winding_number(const WilsonResult& w)
{
    if (w.eigenphases.size() < 100) throw ValidationError("winding_number needs at least 100 samples");
    double total = 0.0;
    for (std::size_t j = 1; j < w.eigenphases.size(); ++j) {
        const double step = wrap(w.eigenphases[j][0] - w.eigenphases[j - 1][0]);
        // a jump this close to pi has no well-defined direction
        if (std::abs(step) > 0.9 * pi) throw ResolutionError("Wilson phase jump too large; increase k_x sampling");
        total += step;
    }
    const double turns = total / (2.0 * pi);
    const long n = std::lround(turns);
    if (std::abs(turns - n) > 0.1) throw ResolutionError("Wilson phase does not close on an integer winding");
    return static_cast<int>(n);
}

std::vector<SweepRow> phase_sweep(const ModelSpec& spec, const std::vector<double>& masses, double kz, int grid,
                                  int threads)
{
    require_lattice(spec);
    const double c = std::cos(kz);
    std::vector<SweepRow> rows;
    rows.reserve(masses.size());
    for (double m : masses) {
        for (double crit : {c - 2.0, c, c + 2.0})
            if (std::abs(m - crit) < 1e-3)
                throw ValidationError("phase_sweep: mass " + std::to_string(m) + " sits on a critical point");
        ModelSpec s = spec;
        s.mass = m;
        SweepRow row;
        row.mass = m;
        row.invariant = is_cp(spec.family) ? chern_number(s, kz, grid, Method::plaquette_oracle, threads)
                                           : euler_class(s, kz, grid, Method::curvature_sum, threads);
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> sweep_transitions(const std::vector<SweepRow>& rows)
{
    std::vector<double> t;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].invariant.rounded != rows[i - 1].invariant.rounded)
            t.push_back(0.5 * (rows[i].mass + rows[i - 1].mass));
    return t;
}

}  // namespace naqgt
