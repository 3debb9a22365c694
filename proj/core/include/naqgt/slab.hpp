#pragma once

#include "naqgt/models.hpp"

#include <map>
#include <vector>

namespace naqgt {

// H(k_open) = sum_m T_m e^{i m k_open}; T_m couples site r to site r + m.
struct HoppingSeries {
    std::map<int, Mat4> terms;
    int open_axis = 1;
};

HoppingSeries fourier_hoppings(const ModelSpec& spec, int open_axis, const Vec3& fixed_k);

Mat4 reassemble(const HoppingSeries& h, double k);

// Hard-wall slab Hamiltonian of dimension 4 n_sites.
Eigen::MatrixXcd slab_matrix(const HoppingSeries& h, int n_sites);

struct SlabSpectrum {
    Vec3 transverse_k = Vec3::Zero();
    Eigen::VectorXd energies;
    // probability on the outer 4 sites at either boundary, per eigenvector
    Eigen::VectorXd edge_weight;
};

inline constexpr double edge_threshold = 0.6;
inline constexpr int edge_sites = 4;

SlabSpectrum slab_spectrum(const ModelSpec& spec, int open_axis, int n_sites, const Vec3& k);

// One spectrum per sweep value of k[sweep_axis]; other momenta taken from fixed_k.
std::vector<SlabSpectrum> slab_sweep(const ModelSpec& spec, int open_axis, int n_sites, const Vec3& fixed_k,
                                     int sweep_axis, const std::vector<double>& sweep, int threads = 0);

}  // namespace naqgt
