#include "naqgt/qgt.hpp"

#include "naqgt/errors.hpp"

#include <cmath>

namespace naqgt {

namespace {

constexpr double fd_step = 1e-5;

void check_index(const ModelSpec& spec, int mu)
{
    if (mu < 0 || mu >= spec.n_params()) throw ValidationError("parameter index out of range");
}

// Real frame at a point, rotated onto the reference frame by the orthogonal polar factor.
Eigen::Matrix<double, 4, 2> aligned_frame(const ModelSpec& spec, const Vec3& p, const Eigen::Matrix<double, 4, 2>& ref)
{
    const Eigen::Matrix<double, 4, 2> f = ground_states(spec, p, GaugeMode::real_orthogonal).ground.real();
    const Eigen::Matrix2d overlap = f.transpose() * ref;
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return f * (svd.matrixU() * svd.matrixV().transpose());
}

}  // namespace

QGTBlock qgt_block(const ModelSpec& spec, const Vec3& point, const DegenerateSubspace& sub, int mu, int nu)
{
    check_index(spec, mu);
    check_index(spec, nu);
    const BlochVector bv = bloch_vector(spec, point);
    const Mat4 dmu = assemble(spec, bv.grad.col(mu));
    const Mat4 dnu = assemble(spec, bv.grad.col(nu));
    const double gap = 2.0 * sub.e_plus;
    const Mat2 a = sub.ground.adjoint() * dmu * sub.excited;
    const Mat2 b = sub.excited.adjoint() * dnu * sub.ground;
    QGTBlock out;
    out.mu = mu;
    out.nu = nu;
    out.q = a * b / (gap * gap);
    out.g = (out.q + out.q.adjoint()) / 2.0;
    out.f = cplx(0.0, 1.0) * (out.q - out.q.adjoint());
    return out;
}

QGTBlock qgt_block(const ModelSpec& spec, const Vec3& point, int mu, int nu, GaugeMode mode)
{
    return qgt_block(spec, point, ground_states(spec, point, mode), mu, nu);
}

QGTBlock qgt_block(const ModelSpec& spec, const Vec3& point, int mu, int nu)
{
    return qgt_block(spec, point, mu, nu, default_gauge_mode(spec));
}

UnitBloch unit_bloch(const ModelSpec& spec, const Vec3& point)
{
    const BlochVector bv = bloch_vector(spec, point);
    UnitBloch u;
    u.norm = bv.d.norm();
    if (u.norm < default_gap_floor) throw MonopoleProximity("unit Bloch vector undefined at a monopole");
    u.dhat = bv.d / u.norm;
    for (int mu = 0; mu < 3; ++mu) {
        const Vec3 g = bv.grad.col(mu);
        u.grad.col(mu) = (g - u.dhat * u.dhat.dot(g)) / u.norm;
    }
    return u;
}

double trace_metric(const ModelSpec& spec, const Vec3& point, int mu, int nu)
{
    check_index(spec, mu);
    check_index(spec, nu);
    const UnitBloch u = unit_bloch(spec, point);
    return 0.5 * u.grad.col(mu).dot(u.grad.col(nu));
}

double solid_angle_density(const ModelSpec& spec, const Vec3& point, int mu, int nu)
{
    check_index(spec, mu);
    check_index(spec, nu);
    const UnitBloch u = unit_bloch(spec, point);
    return u.dhat.dot(Vec3(u.grad.col(mu)).cross(Vec3(u.grad.col(nu))));
}

GeometryScalars geometry_scalars(const ModelSpec& spec, const Vec3& point, int mu, int nu)
{
    const DegenerateSubspace sub = ground_states(spec, point);
    const QGTBlock mm = qgt_block(spec, point, sub, mu, mu);
    const QGTBlock mn = qgt_block(spec, point, sub, mu, nu);
    const QGTBlock nn = qgt_block(spec, point, sub, nu, nu);
    GeometryScalars s;
    s.tr_g = {mm.g.trace().real(), mn.g.trace().real(), nn.g.trace().real()};
    s.det_g_mat = 4.0 * (s.tr_g[0] * s.tr_g[2] - s.tr_g[1] * s.tr_g[1]);
    s.solid_angle_density = solid_angle_density(spec, point, mu, nu);
    s.tr_f = mn.f.trace().real();
    s.eu = is_cp(spec.family) ? 0.0 : mn.f(0, 1).imag();
    return s;
}

std::pair<double, double> det_relation(const ModelSpec& spec, const Vec3& point, int mu, int nu)
{
    const GeometryScalars s = geometry_scalars(spec, point, mu, nu);
    return {std::sqrt(std::max(0.0, s.det_g_mat)), std::abs(s.solid_angle_density)};
}

EulerCurvature euler_curvature(const ModelSpec& spec, const Vec3& point, int mu, int nu)
{
    if (is_cp(spec.family)) throw GaugeError("Euler curvature needs a real (C2T) model");
    check_index(spec, mu);
    check_index(spec, nu);

    const DegenerateSubspace sub = ground_states(spec, point, GaugeMode::real_orthogonal);
    const Eigen::Matrix<double, 4, 2> ref = sub.ground.real();
    auto derivative = [&](int dir) {
        Vec3 step = Vec3::Zero();
        step[dir] = fd_step;
        return Eigen::Matrix<double, 4, 2>(
            (aligned_frame(spec, point + step, ref) - aligned_frame(spec, point - step, ref)) / (2.0 * fd_step));
    };
    const Eigen::Matrix<double, 4, 2> a = derivative(mu);
    const Eigen::Matrix<double, 4, 2> b = derivative(nu);

    EulerCurvature out;
    out.finite_difference = a.col(0).dot(b.col(1)) - b.col(0).dot(a.col(1));

    const double f12 = qgt_block(spec, point, sub, mu, nu).f(0, 1).imag();
    const double mag = 0.5 * std::abs(solid_angle_density(spec, point, mu, nu));
    out.value = f12 < 0.0 ? -mag : mag;
    if (std::abs(out.value - out.finite_difference) > 1e-6 * std::max(1.0, mag))
        throw ResolutionError("Euler curvature: finite-difference and closed-form routes disagree");
    return out;
}

DistancePair quantum_distance(const ModelSpec& spec, const Vec3& point, const Vec3& dlambda,
                              const Eigen::Vector2cd& coeffs)
{
    if (std::abs(coeffs.norm() - 1.0) > 1e-12) throw ValidationError("quantum_distance: coefficients not normalized");
    if (dlambda.norm() > 1e-2) throw ValidationError("quantum_distance: step larger than 1e-2");
    const int np = spec.n_params();
    for (int mu = np; mu < 3; ++mu)
        if (dlambda[mu] != 0.0) throw ValidationError("quantum_distance: step along an inactive parameter");

    const DegenerateSubspace sub = ground_states(spec, point);
    const Vec4 psi = sub.ground * coeffs;
    const Mat4 p_next = eigensystem(hamiltonian(spec, point + dlambda)).projector;
    DistancePair d;
    d.exact = 1.0 - (psi.adjoint() * p_next * psi)(0, 0).real();
    for (int mu = 0; mu < np; ++mu)
        for (int nu = 0; nu < np; ++nu) {
            if (dlambda[mu] == 0.0 || dlambda[nu] == 0.0) continue;
            const Mat2 g = qgt_block(spec, point, sub, mu, nu).g;
            d.quadratic += (coeffs.adjoint() * g * coeffs)(0, 0).real() * dlambda[mu] * dlambda[nu];
        }
    return d;
}

}  // namespace naqgt
