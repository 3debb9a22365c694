#pragma once

#include "naqgt/models.hpp"
#include "naqgt/spectral.hpp"

#include <array>
#include <string>
#include <vector>

namespace naqgt {

enum class Method { curvature_sum, metric_sign, plaquette_oracle, dynamic };

std::string to_string(Method m);

struct InvariantResult {
    double value = 0.0;
    int n_mu = 0;
    int n_nu = 0;
    Method method = Method::curvature_sum;
    long rounded = 0;
};

InvariantResult make_invariant(double value, int n_mu, int n_nu, Method method);

// Cell midpoints -pi + (i + 1/2) 2pi/n.
std::vector<double> bz_midpoints(int n);

// First Chern number of the ground doublet on the k_z slice (lattice models).
InvariantResult chern_number(const ModelSpec& spec, double kz, int grid, Method method, int threads = 0);

// Euler class of the real ground doublet on the k_z slice (C2T lattice models).
// Accepts curvature_sum (Euler-curvature Riemann sum) and metric_sign.
InvariantResult euler_class(const ModelSpec& spec, double kz, int grid, Method method, int threads = 0);

// Chern (CP) or Euler (C2T) charge of a sphere family; curvature_sum or metric_sign.
InvariantResult monopole_charge(const ModelSpec& spec, int n_theta, int n_phi, Method method, int threads = 0);

// Path-ordered product of polar-unitarized links along k_y, ordered from -pi to pi.
Mat2 wilson_loop(const ModelSpec& spec, double kz, double kx, int n_ky, bool real_gauge);

struct WilsonResult {
    std::vector<double> kx_samples;
    std::vector<std::array<double, 2>> eigenphases;
    int winding = 0;
};

// Eigenphases (CP) or the SO(2) angle pair (+theta, -theta) (C2T) on n_kx + 1 samples
// covering [-pi, pi]; phases are tracked by continuity between samples.
WilsonResult wilson_spectrum(const ModelSpec& spec, double kz, int n_kx, int n_ky, int threads = 0);

int winding_number(const WilsonResult& w);

struct SweepRow {
    double mass = 0.0;
    InvariantResult invariant;
};

// Plaquette Chern number (CP) or Euler class (C2T) for each mass.
std::vector<SweepRow> phase_sweep(const ModelSpec& spec, const std::vector<double>& masses, double kz,
                                  int grid = 101, int threads = 0);

// Midpoints between neighbouring sweep rows whose rounded invariants differ.
std::vector<double> sweep_transitions(const std::vector<SweepRow>& rows);

}  // namespace naqgt
