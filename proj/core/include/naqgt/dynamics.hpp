#pragma once

#include "naqgt/models.hpp"
#include "naqgt/spectral.hpp"
#include "naqgt/topology.hpp"

#include <array>
#include <vector>

namespace naqgt {

// lambda_mu(t) = start_mu + v^2 t^2 / (2 pi) on every ramped direction, t in [0, pi/v].
struct RampSchedule {
    Vec3 start = Vec3::Zero();
    std::array<bool, 3> ramped{true, false, false};
    double v = 0.1;

    double t_final() const;
    Vec3 at(double t) const;
    Vec3 velocity(double t) const;
    // The ramp covers v^2 t_f^2 / (2 pi) = pi/2 per direction, so it starts pi/2 behind the target.
    static RampSchedule landing(const Vec3& target, std::array<bool, 3> ramped, double v);
};

enum class InitialState { one, two, plus_superposition, i_superposition };

Vec4 prepare_initial(const ModelSpec& spec, const Vec3& point, InitialState which, GaugeMode mode);

struct EvolvedState {
    Vec4 psi = Vec4::Zero();
    double t = 0.0;
    double norm_drift = 0.0;
};

inline constexpr double default_dt = 1e-3;

// Fourth-order commutator-free exponential integrator on the Clifford triple.
EvolvedState evolve(const ModelSpec& spec, const RampSchedule& schedule, const Vec4& psi0, double dt = default_dt);

struct RampObservables {
    double force = 0.0;           // <psi| d_nu H |psi>
    double force_ground = 0.0;    // same in the normalized ground-subspace projection
    double energy_variance = 0.0; // <H^2> - <H>^2
    double ground_population = 0.0;
    double norm_drift = 0.0;
};

// One ramp landing on `target`, started from the gauge-fixed initial state at the ramp start.
RampObservables run_ramp(const ModelSpec& spec, const Vec3& target, std::array<bool, 3> ramped, int measure_nu,
                         double v, InitialState which, GaugeMode mode, double dt = default_dt);

// Component from the four diagonal measurements in states 1, 2, m, n.
cplx combine_offdiagonal(double x11, double x22, double xmm, double xnn);
// Inverse direction: the diagonal value in a superposition state from the block entries.
double superposition_value(double x11, double x22, cplx x12, InitialState which);

enum class Observable { berry, metric };

struct DynamicOptions {
    double v = 0.1;
    double dt = default_dt;
    GaugeMode mode = GaugeMode::complex_phase;
};

DynamicOptions default_dynamic_options(const ModelSpec& spec);

// Entry (i, j) of F_{mu nu} or g_{mu nu} at the target, using only the runs it needs.
cplx dynamic_entry(const ModelSpec& spec, const Vec3& target, Observable obs, int i, int j, int mu, int nu,
                   const DynamicOptions& opt);

struct MapPoint {
    double kx = 0.0;
    double ky = 0.0;
    cplx analytic;
    cplx dynamic;
    double gap = 0.0;
};

std::vector<MapPoint> extract_berry(const ModelSpec& spec, double kz, int grid, int i, int j,
                                    const DynamicOptions& opt, int threads = 0);
std::vector<MapPoint> extract_metric(const ModelSpec& spec, double kz, int grid, int i, int j,
                                     const DynamicOptions& opt, int threads = 0);

// Chern number (CP) or Euler class (C2T) of a sphere family from simulated ramps over a
// midpoint (theta, phi) grid. The metric route takes the sign from the analytic curvature.
InvariantResult dynamic_invariant(const ModelSpec& spec, int n_theta, int n_phi, Observable obs,
                                  const DynamicOptions& opt, int threads = 0);

// Least-squares slope of log|y| against log x.
double fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace naqgt
