#include "doctest.h"
#include "oracles.hpp"

#include "naqgt/dynamics.hpp"
#include "naqgt/errors.hpp"
#include "naqgt/qgt.hpp"

#include <random>

using namespace naqgt;
using oracle::pi;

namespace {

ModelSpec model(Family f, int n = 1, double mass = 2.0)
{
    ModelSpec s;
    s.family = f;
    s.n = n;
    s.mass = mass;
    return s;
}

}  // namespace

TEST_CASE("ramp schedule")
{
    const Vec3 target(0.4, -0.3, 0.1);
    const RampSchedule r = RampSchedule::landing(target, {true, false, true}, 0.2);
    CHECK(r.t_final() == doctest::Approx(pi / 0.2));
    CHECK((r.at(r.t_final()) - target).norm() < 1e-12);
    CHECK(r.velocity(r.t_final())[0] == doctest::Approx(0.2));
    CHECK(r.velocity(r.t_final())[1] == 0.0);
    CHECK(r.velocity(0.0).norm() == 0.0);
    CHECK(r.at(0.0)[1] == target[1]);
    // quadratic profile: lambda(t) - lambda(0) = v^2 t^2 / 2 pi
    const double t = 3.3;
    CHECK(r.at(t)[2] - r.start[2] == doctest::Approx(0.04 * t * t / (2 * pi)));
    CHECK_THROWS_AS(RampSchedule::landing(target, {true, false, false}, 0.0), ValidationError);
}

TEST_CASE("initial states")
{
    const ModelSpec s = model(Family::c2t_lattice);
    const Vec3 p(0.7, -1.2, 0.0);
    const DegenerateSubspace sub = ground_states(s, p, GaugeMode::real_orthogonal);
    const Mat4 h = hamiltonian(s, p);
    const Vec4 one = prepare_initial(s, p, InitialState::one, GaugeMode::real_orthogonal);
    CHECK((h * one - sub.e_minus * one).norm() < 1e-10);
    const Vec4 m = prepare_initial(s, p, InitialState::plus_superposition, GaugeMode::real_orthogonal);
    const Vec4 n = prepare_initial(s, p, InitialState::i_superposition, GaugeMode::real_orthogonal);
    CHECK(std::abs(sub.ground.col(0).dot(m)) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(std::abs(sub.ground.col(1).dot(m)) == doctest::Approx(1 / std::sqrt(2.0)));
    // <psi_m|psi_n> = (1 + i)/2 from the two definitions
    CHECK(std::abs(m.dot(n) - cplx(0.5, 0.5)) < 1e-12);
    CHECK(std::abs(m.dot(n)) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(m.norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(prepare_initial(model(Family::cp_lattice), Vec3(0, 0, pi / 2), InitialState::one,
                                    GaugeMode::complex_phase),
                    MonopoleProximity);
}

TEST_CASE("constant Hamiltonian gives a pure phase")
{
    const ModelSpec s = model(Family::cp_lattice);
    const Vec3 p(0.3, 0.5, 0.2);
    RampSchedule r = RampSchedule::landing(p, {false, false, false}, 0.5);
    const Vec4 psi0 = prepare_initial(s, p, InitialState::plus_superposition, GaugeMode::complex_phase);
    const EvolvedState st = evolve(s, r, psi0);
    const double e = ground_states(s, p).e_minus;
    const Vec4 expected = std::exp(cplx(0.0, -e * r.t_final())) * psi0;
    CHECK(1.0 - std::norm(expected.dot(st.psi)) < 1e-10);
    CHECK((expected - st.psi).norm() < 1e-9);
}

TEST_CASE("adiabatic limit and slow ramps stay in the ground doublet")
{
    const ModelSpec s = model(Family::cp_lattice);
    const RampObservables slow =
        run_ramp(s, Vec3(0.0, 0.0, 0.0), {true, true, false}, -1, 1e-3, InitialState::one, GaugeMode::complex_phase);
    CHECK(slow.ground_population >= 1 - 1e-4);
    CHECK(slow.norm_drift <= 1e-8);
    // start (-pi/2, -pi/2) lands on the origin
    const RampObservables r =
        run_ramp(s, Vec3(0.0, 0.0, 0.0), {true, true, false}, -1, 0.1, InitialState::one, GaugeMode::complex_phase);
    CHECK(r.ground_population >= 0.99);
}

TEST_CASE("fourth-order convergence")
{
    // a large hopping makes the step error visible above roundoff
    ModelSpec s = model(Family::c2t_lattice);
    s.t = 25.0;
    const Vec3 target(0.9, -0.4, 0.3);
    const RampSchedule r = RampSchedule::landing(target, {true, true, false}, 0.5);
    const Vec4 psi0 = prepare_initial(s, r.start, InitialState::one, GaugeMode::real_orthogonal);
    const Vec4 a = evolve(s, r, psi0, 0.006).psi, b = evolve(s, r, psi0, 0.003).psi,
               c = evolve(s, r, psi0, 0.0015).psi;
    const double e1 = (a - b).norm(), e2 = (b - c).norm();
    CHECK(e1 / e2 >= 8.0);
    CHECK(e1 > 1e-9);
}

TEST_CASE("integrator preconditions")
{
    const ModelSpec s = model(Family::cp_lattice);
    const RampSchedule r = RampSchedule::landing(Vec3(0.1, 0.2, 0.3), {true, false, false}, 0.5);
    const Vec4 psi0 = prepare_initial(s, r.start, InitialState::one, GaugeMode::complex_phase);
    CHECK_THROWS_AS(evolve(s, r, psi0, 0.01), ValidationError);
    CHECK_THROWS_AS(evolve(s, r, psi0, 0.0), ValidationError);
    CHECK_THROWS_AS(evolve(s, r, Vec4(2.0 * psi0), 1e-3), ValidationError);
}

TEST_CASE("reconstruction identities close")
{
    std::mt19937_64 rng(73);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 20; ++trial) {
        Mat2 f;
        const double a = nd(rng), b = nd(rng);
        const cplx c(nd(rng), nd(rng));
        f << a, c, std::conj(c), b;
        // diagonal values straight from the definitions of psi_m and psi_n
        const Eigen::Vector2cd vm = Eigen::Vector2cd(1, 1) / std::sqrt(2.0);
        const Eigen::Vector2cd vn = Eigen::Vector2cd(1, cplx(0, 1)) / std::sqrt(2.0);
        const double fm = (vm.adjoint() * f * vm)(0, 0).real(), fn = (vn.adjoint() * f * vn)(0, 0).real();
        CHECK(superposition_value(a, b, c, InitialState::plus_superposition) == doctest::Approx(fm));
        CHECK(superposition_value(a, b, c, InitialState::i_superposition) == doctest::Approx(fn));
        CHECK(std::abs(combine_offdiagonal(a, b, fm, fn) - c) < 1e-12);
    }
}

TEST_CASE("single-point extraction against the analytic block")
{
    const ModelSpec cp = model(Family::cp_lattice), c2t = model(Family::c2t_lattice);
    const Vec3 p(2.0, -1.0, 0.0);
    DynamicOptions o = default_dynamic_options(cp);
    o.v = 0.05;
    const QGTBlock a = qgt_block(cp, p, 0, 1);
    const cplx f11 = dynamic_entry(cp, p, Observable::berry, 0, 0, 0, 1, o);
    CHECK(f11.real() == doctest::Approx(a.f(0, 0).real()).epsilon(0.1));
    // F_mumu vanishes identically; the ramp-start transient sets the floor, small enough at v = 0.01
    DynamicOptions slow = o;
    slow.v = 0.01;
    CHECK(std::abs(dynamic_entry(cp, p, Observable::berry, 0, 0, 0, 0, slow)) < 1e-3);

    DynamicOptions r = default_dynamic_options(c2t);
    r.v = 0.05;
    CHECK(r.mode == GaugeMode::real_orthogonal);
    const QGTBlock b = qgt_block(c2t, p, 0, 1, GaugeMode::real_orthogonal);
    const cplx f12 = dynamic_entry(c2t, p, Observable::berry, 0, 1, 0, 1, r);
    CHECK(f12.imag() == doctest::Approx(b.f(0, 1).imag()).epsilon(0.1));
    const cplx f21 = dynamic_entry(c2t, p, Observable::berry, 1, 0, 0, 1, r);
    CHECK(std::abs(f21 - std::conj(f12)) < 1e-14);

    const cplx gxx = dynamic_entry(cp, p, Observable::metric, 0, 0, 0, 0, o);
    const QGTBlock gx = qgt_block(cp, p, 0, 0);
    CHECK(gxx.real() == doctest::Approx(gx.g(0, 0).real()).epsilon(0.1));

    DynamicOptions bad = o;
    bad.mode = GaugeMode::real_orthogonal;
    CHECK_THROWS_AS(dynamic_entry(cp, p, Observable::berry, 0, 0, 0, 1, bad), GaugeError);
    bad = o;
    bad.v = -1.0;
    CHECK_THROWS_AS(dynamic_entry(cp, p, Observable::berry, 0, 0, 0, 1, bad), ValidationError);
}

TEST_CASE("response scaling with the ramp velocity")
{
    const ModelSpec s = model(Family::cp_lattice);
    const Vec3 p(2.0, -1.0, 0.0);
    std::vector<double> vs = {0.05, 0.1, 0.2}, force, variance;
    for (double v : vs) {
        const RampObservables r = run_ramp(s, p, {true, false, false}, 1, v, InitialState::one, GaugeMode::complex_phase);
        force.push_back(r.force - r.force_ground);
        variance.push_back(r.energy_variance);
    }
    CHECK(fit_exponent(vs, force) == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fit_exponent(vs, variance) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(fit_exponent({1.0, 2.0, 4.0}, {3.0, 24.0, 192.0}) == doctest::Approx(3.0));
    CHECK_THROWS_AS(fit_exponent({1.0}, {1.0}), ValidationError);
}

TEST_CASE("coarse dynamic invariant on the sphere")
{
    ModelSpec s = model(Family::cp_sphere_plus);
    s.radius = 1.0;
    DynamicOptions o = default_dynamic_options(s);
    const InvariantResult r = dynamic_invariant(s, 8, 2, Observable::berry, o);
    CHECK(r.method == Method::dynamic);
    CHECK(r.value == doctest::Approx(-2.0).epsilon(0.05));
    CHECK_THROWS_AS(dynamic_invariant(model(Family::cp_lattice), 8, 2, Observable::berry, o), ValidationError);
}

TEST_CASE("dynamic maps are independent of the thread count")
{
    const ModelSpec s = model(Family::cp_lattice);
    DynamicOptions o = default_dynamic_options(s);
    o.v = 0.2;
    const auto a = extract_berry(s, 0.0, 3, 0, 0, o, 1), b = extract_berry(s, 0.0, 3, 0, 0, o, 3);
    REQUIRE(a.size() == 9);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].dynamic == b[i].dynamic);
        CHECK(a[i].analytic == b[i].analytic);
        CHECK(a[i].gap >= 2.0 - 1e-12);
    }
}
