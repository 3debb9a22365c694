#include "naqgt/dynamics.hpp"

#include "naqgt/errors.hpp"
#include "naqgt/parallel.hpp"
#include "naqgt/qgt.hpp"

#include <cmath>
#include <numbers>

namespace naqgt {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double norm_tolerance = 1e-8;

// Each Clifford matrix of a triple has exactly one nonzero entry per row.
struct SparseTriple {
    int col[3][4]{};
    double vr[3][4]{}, vi[3][4]{};

    explicit SparseTriple(const std::array<Mat4, 3>& g)
    {
        for (int r = 0; r < 3; ++r)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (std::abs(g[r](i, j)) > 0.5) {
                        col[r][i] = j;
                        vr[r][i] = g[r](i, j).real();
                        vi[r][i] = g[r](i, j).imag();
                    }
    }
};

// exp(-i b.Gamma) psi, exact because the triple anticommutes: (b.Gamma)^2 = |b|^2.
// psi is held as separate real and imaginary parts; std::complex products are much slower here.
inline void apply_exponential(const SparseTriple& g, const Vec3& b, double* re, double* im)
{
    const double a2 = b.squaredNorm();
    double c, s;
    if (a2 < 1e-2) {
        // series truncation error below a^10/10! which is under 1e-16 here
        c = 1.0 - a2 / 2.0 * (1.0 - a2 / 12.0 * (1.0 - a2 / 30.0 * (1.0 - a2 / 56.0 * (1.0 - a2 / 90.0))));
        s = 1.0 - a2 / 6.0 * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0 * (1.0 - a2 / 72.0 * (1.0 - a2 / 110.0))));
    } else {
        const double a = std::sqrt(a2);
        c = std::cos(a);
        s = std::sin(a) / a;
    }
    double nr[4], ni[4];
    for (int i = 0; i < 4; ++i) {
        double hr = 0.0, hi = 0.0;
        for (int r = 0; r < 3; ++r) {
            const int j = g.col[r][i];
            const double br = b[r] * g.vr[r][i], bi = b[r] * g.vi[r][i];
            hr += br * re[j] - bi * im[j];
            hi += br * im[j] + bi * re[j];
        }
        nr[i] = c * re[i] + s * hi;
        ni[i] = c * im[i] - s * hr;
    }
    for (int i = 0; i < 4; ++i) {
        re[i] = nr[i];
        im[i] = ni[i];
    }
}

std::array<bool, 3> single(int mu)
{
    std::array<bool, 3> d{false, false, false};
    d[mu] = true;
    return d;
}

std::array<bool, 3> pair(int mu, int nu)
{
    std::array<bool, 3> d = single(mu);
    d[nu] = true;
    return d;
}

constexpr InitialState diagonal_states[4] = {InitialState::one, InitialState::two, InitialState::plus_superposition,
                                             InitialState::i_superposition};

void check_options(const ModelSpec& spec, const DynamicOptions& opt)
{
    spec.validate();
    if (!(opt.v > 0.0) || !std::isfinite(opt.v)) throw ValidationError("ramp velocity must be positive");
    if (opt.mode == GaugeMode::real_orthogonal && is_cp(spec.family))
        throw GaugeError("CP models have no real gauge");
}

// Diagonal QGT entry measured in one initial state.
double measured_diagonal(const ModelSpec& spec, const Vec3& target, Observable obs, int mu, int nu, InitialState s,
                         const DynamicOptions& o)
{
    const double v2 = o.v * o.v;
    if (obs == Observable::berry) {
        const RampObservables r = run_ramp(spec, target, single(mu), nu, o.v, s, o.mode, o.dt);
        return (r.force - r.force_ground) / o.v;
    }
    const double e_mu = run_ramp(spec, target, single(mu), -1, o.v, s, o.mode, o.dt).energy_variance;
    if (mu == nu) return e_mu / v2;
    const double e_nu = run_ramp(spec, target, single(nu), -1, o.v, s, o.mode, o.dt).energy_variance;
    const double e_both = run_ramp(spec, target, pair(mu, nu), -1, o.v, s, o.mode, o.dt).energy_variance;
    return (e_both - e_mu - e_nu) / (2.0 * v2);
}

std::vector<MapPoint> dynamic_map(const ModelSpec& spec, double kz, int grid, Observable obs, int i, int j,
                                  const DynamicOptions& opt, int threads)
{
    check_options(spec, opt);
    if (!is_lattice(spec.family)) throw ValidationError("dynamic maps need a lattice family");
    if (i < 0 || i > 1 || j < 0 || j > 1) throw ValidationError("band indices must be 0 or 1");
    const std::vector<double> ks = bz_midpoints(grid);
    std::vector<MapPoint> out(static_cast<std::size_t>(grid) * grid);
    parallel_for(
        out.size(),
        [&](std::size_t idx) {
            MapPoint& m = out[idx];
            m.kx = ks[idx / grid];
            m.ky = ks[idx % grid];
            const Vec3 p(m.kx, m.ky, kz);
            const DegenerateSubspace sub = ground_states(spec, p, opt.mode);
            const QGTBlock b = qgt_block(spec, p, sub, 0, 1);
            m.gap = 2.0 * sub.e_plus;
            m.analytic = obs == Observable::berry ? b.f(i, j) : b.g(i, j);
            m.dynamic = dynamic_entry(spec, p, obs, i, j, 0, 1, opt);
        },
        threads);
    return out;
}

}  // namespace

double RampSchedule::t_final() const { return pi / v; }

Vec3 RampSchedule::at(double t) const
{
    Vec3 p = start;
    const double shift = v * v * t * t / (2.0 * pi);
    for (int mu = 0; mu < 3; ++mu)
        if (ramped[mu]) p[mu] += shift;
    return p;
}

Vec3 RampSchedule::velocity(double t) const
{
    Vec3 p = Vec3::Zero();
    for (int mu = 0; mu < 3; ++mu)
        if (ramped[mu]) p[mu] = v * v * t / pi;
    return p;
}

RampSchedule RampSchedule::landing(const Vec3& target, std::array<bool, 3> ramped, double v)
{
    if (!(v > 0.0)) throw ValidationError("ramp velocity must be positive");
    RampSchedule s;
    s.ramped = ramped;
    s.v = v;
    s.start = target;
    for (int mu = 0; mu < 3; ++mu)
        if (ramped[mu]) s.start[mu] -= pi / 2.0;
    return s;
}

Vec4 prepare_initial(const ModelSpec& spec, const Vec3& point, InitialState which, GaugeMode mode)
{
    const DegenerateSubspace sub = ground_states(spec, point, mode);
    const Vec4 a = sub.ground.col(0), b = sub.ground.col(1);
    const double r = 1.0 / std::sqrt(2.0);
    switch (which) {
    case InitialState::one: return a;
    case InitialState::two: return b;
    case InitialState::plus_superposition: return r * (a + b);
    case InitialState::i_superposition: return r * (a + cplx(0.0, 1.0) * b);
    }
    throw ValidationError("unknown initial state");
}

EvolvedState evolve(const ModelSpec& spec, const RampSchedule& schedule, const Vec4& psi0, double dt)
{
    if (!(dt > 0.0) || dt > 2.0 * pi * 1e-3) throw ValidationError("time step must lie in (0, 2 pi 1e-3]");
    if (!(schedule.v > 0.0)) throw ValidationError("ramp velocity must be positive");
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw ValidationError("initial state is not normalized");

    const double t_final = schedule.t_final();
    const long steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
    const double h = t_final / steps;
    const SparseTriple g(model_triple(spec));
    const double s3 = std::sqrt(3.0);
    const double c1 = 0.5 - s3 / 6.0, c2 = 0.5 + s3 / 6.0;
    const double w1 = (3.0 - 2.0 * s3) / 12.0, w2 = (3.0 + 2.0 * s3) / 12.0;

    const BlochPath path(spec, schedule.start, schedule.ramped);
    double re[4], im[4];
    for (int i = 0; i < 4; ++i) {
        re[i] = psi0[i].real();
        im[i] = psi0[i].imag();
    }
    if (!is_lattice(spec.family)) {
        for (long s = 0; s < steps; ++s) {
            const double t0 = s * h;
            const Vec3 d1 = path(schedule.at(t0 + c1 * h));
            const Vec3 d2 = path(schedule.at(t0 + c2 * h));
            apply_exponential(g, h * (w2 * d1 + w1 * d2), re, im);
            apply_exponential(g, h * (w1 * d1 + w2 * d2), re, im);
        }
    } else {
        // The ramp shift v^2 t^2 / 2pi grows by a linearly increasing angle per step, so the
        // trig of each node follows from two rotor products. Rotors are reset periodically.
        const double k = schedule.v * schedule.v / (2.0 * pi);
        const cplx step_growth = std::polar(1.0, 2.0 * k * h * h);
        cplx rot[2], inc[2];
        const double nodes[2] = {c1, c2};
        for (long s = 0; s < steps; ++s) {
            if (s % 512 == 0)
                for (int q = 0; q < 2; ++q) {
                    const double t = (s + nodes[q]) * h;
                    rot[q] = std::polar(1.0, k * t * t);
                    inc[q] = std::polar(1.0, k * h * (2.0 * t + h));
                }
            const Vec3 d1 = path.shifted(rot[0].real(), rot[0].imag());
            const Vec3 d2 = path.shifted(rot[1].real(), rot[1].imag());
            apply_exponential(g, h * (w2 * d1 + w1 * d2), re, im);
            apply_exponential(g, h * (w1 * d1 + w2 * d2), re, im);
            for (int q = 0; q < 2; ++q) {
                rot[q] = cplx(rot[q].real() * inc[q].real() - rot[q].imag() * inc[q].imag(),
                              rot[q].real() * inc[q].imag() + rot[q].imag() * inc[q].real());
                inc[q] = cplx(inc[q].real() * step_growth.real() - inc[q].imag() * step_growth.imag(),
                              inc[q].real() * step_growth.imag() + inc[q].imag() * step_growth.real());
            }
        }
    }
    EvolvedState st;
    for (int i = 0; i < 4; ++i) st.psi[i] = cplx(re[i], im[i]);
    st.t = t_final;
    st.norm_drift = std::abs(st.psi.norm() - 1.0);
    if (st.norm_drift > norm_tolerance) throw StepSizeError("norm drift exceeded 1e-8; reduce dt");
    return st;
}

RampObservables run_ramp(const ModelSpec& spec, const Vec3& target, std::array<bool, 3> ramped, int measure_nu,
                         double v, InitialState which, GaugeMode mode, double dt)
{
    const RampSchedule sched = RampSchedule::landing(target, ramped, v);
    const EvolvedState st = evolve(spec, sched, prepare_initial(spec, sched.start, which, mode), dt);
    const Mat4 h = hamiltonian(spec, target);
    const DegenerateSubspace sub = eigensystem(h);
    const Vec4& psi = st.psi;
    const double nrm = psi.squaredNorm();

    RampObservables r;
    r.norm_drift = st.norm_drift;
    const Vec4 h_psi = h * psi;
    const double e1 = psi.dot(h_psi).real() / nrm;
    const double e2 = h_psi.squaredNorm() / nrm;
    r.energy_variance = e2 - e1 * e1;
    const Vec4 ground = sub.projector * psi;
    r.ground_population = ground.squaredNorm() / nrm;
    if (measure_nu >= 0) {
        const Mat4 dh = d_hamiltonian(spec, target, measure_nu);
        r.force = psi.dot(dh * psi).real() / nrm;
        r.force_ground = ground.dot(dh * ground).real() / ground.squaredNorm();
    }
    return r;
}

cplx combine_offdiagonal(double x11, double x22, double xmm, double xnn)
{
    const cplx i(0.0, 1.0);
    return (2.0 * i * xmm + 2.0 * xnn - (1.0 + i) * (x11 + x22)) / (2.0 * i);
}

double superposition_value(double x11, double x22, cplx x12, InitialState which)
{
    switch (which) {
    case InitialState::one: return x11;
    case InitialState::two: return x22;
    case InitialState::plus_superposition: return 0.5 * (x11 + x22) + x12.real();
    case InitialState::i_superposition: return 0.5 * (x11 + x22) - x12.imag();
    }
    throw ValidationError("unknown initial state");
}

DynamicOptions default_dynamic_options(const ModelSpec& spec)
{
    DynamicOptions o;
    o.mode = default_gauge_mode(spec);
    return o;
}

cplx dynamic_entry(const ModelSpec& spec, const Vec3& target, Observable obs, int i, int j, int mu, int nu,
                   const DynamicOptions& opt)
{
    check_options(spec, opt);
    if (mu < 0 || nu < 0 || mu >= spec.n_params() || nu >= spec.n_params())
        throw ValidationError("parameter index out of range");
    if (i == j) return measured_diagonal(spec, target, obs, mu, nu, diagonal_states[i], opt);
    double x[4];
    for (int s = 0; s < 4; ++s) x[s] = measured_diagonal(spec, target, obs, mu, nu, diagonal_states[s], opt);
    const cplx x12 = combine_offdiagonal(x[0], x[1], x[2], x[3]);
    return i == 0 ? x12 : std::conj(x12);
}

std::vector<MapPoint> extract_berry(const ModelSpec& spec, double kz, int grid, int i, int j,
                                    const DynamicOptions& opt, int threads)
{
    return dynamic_map(spec, kz, grid, Observable::berry, i, j, opt, threads);
}

std::vector<MapPoint> extract_metric(const ModelSpec& spec, double kz, int grid, int i, int j,
                                     const DynamicOptions& opt, int threads)
{
    return dynamic_map(spec, kz, grid, Observable::metric, i, j, opt, threads);
}

InvariantResult dynamic_invariant(const ModelSpec& spec, int n_theta, int n_phi, Observable obs,
                                  const DynamicOptions& opt, int threads)
{
    check_options(spec, opt);
    if (!is_sphere(spec.family)) throw ValidationError("dynamic_invariant needs a sphere family");
    if (n_theta < 1 || n_phi < 1) throw ValidationError("sphere grid must be positive");
    const bool cp = is_cp(spec.family);
    const double dth = pi / n_theta, dph = 2.0 * pi / n_phi;
    const double v2 = opt.v * opt.v;
    std::vector<double> vals(static_cast<std::size_t>(n_theta) * n_phi);
    parallel_for(
        vals.size(),
        [&](std::size_t idx) {
            const Vec3 p((idx / n_phi + 0.5) * dth, (idx % n_phi + 0.5) * dph, 0.0);
            if (obs == Observable::berry) {
                vals[idx] = cp ? (dynamic_entry(spec, p, obs, 0, 0, 0, 1, opt) +
                                  dynamic_entry(spec, p, obs, 1, 1, 0, 1, opt))
                                     .real()
                               : dynamic_entry(spec, p, obs, 0, 1, 0, 1, opt).imag();
                return;
            }
            // Tr g over the doublet for theta-theta, theta-phi and phi-phi from six ramps
            double tt = 0.0, ff = 0.0, tf = 0.0;
            for (InitialState s : {InitialState::one, InitialState::two}) {
                const double et = run_ramp(spec, p, single(0), -1, opt.v, s, opt.mode, opt.dt).energy_variance;
                const double ef = run_ramp(spec, p, single(1), -1, opt.v, s, opt.mode, opt.dt).energy_variance;
                const double eb = run_ramp(spec, p, pair(0, 1), -1, opt.v, s, opt.mode, opt.dt).energy_variance;
                tt += et / v2;
                ff += ef / v2;
                tf += (eb - et - ef) / (2.0 * v2);
            }
            const double det_g = 4.0 * (tt * ff - tf * tf);
            const GeometryScalars an = geometry_scalars(spec, p, 0, 1);
            const double sign = (cp ? an.tr_f : an.eu) < 0.0 ? -1.0 : 1.0;
            vals[idx] = sign * (cp ? 1.0 : 0.5) * std::sqrt(std::max(0.0, det_g));
        },
        threads);
    double sum = 0.0;
    for (double x : vals) sum += x;
    return make_invariant(sum * dth * dph / (2.0 * pi), n_theta, n_phi, Method::dynamic);
}

double fit_exponent(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_exponent needs matching samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace naqgt
