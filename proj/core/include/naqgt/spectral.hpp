#pragma once

#include "naqgt/clifford.hpp"
#include "naqgt/models.hpp"

#include <optional>

namespace naqgt {

using Frame = Eigen::Matrix<cplx, 4, 2>;

struct DegenerateSubspace {
    double e_minus = 0.0;
    double e_plus = 0.0;
    Frame ground = Frame::Zero();
    Frame excited = Frame::Zero();
    Mat4 projector = Mat4::Zero();
};

enum class GaugeMode { complex_phase, real_orthogonal };

// Extra structure that pins the ground frame beyond the plain pivot rule.
struct GaugeStructure {
    enum class Kind { none, sector, complex_structure };
    Kind kind = Kind::none;
    // sector: Hermitian S with S^2 = 1 and [S,H] = 0; psi_1 in S=+1, psi_2 in S=-1.
    // complex_structure: real J with J^2 = -1 and [J,H] = 0; psi_2 = J psi_1.
    Mat4 op = Mat4::Zero();
};

inline constexpr double default_gap_floor = 1e-9;

// Ground/excited pairs from the spectral projectors, column-pivoted Gram-Schmidt.
DegenerateSubspace eigensystem(const Mat4& h, double gap_floor = default_gap_floor);

DegenerateSubspace fix_gauge(const DegenerateSubspace& sub, GaugeMode mode,
                             const GaugeStructure& structure = {});

GaugeMode default_gauge_mode(const ModelSpec& spec);
GaugeStructure gauge_structure(const ModelSpec& spec, GaugeMode mode);

// eigensystem + fix_gauge with the structure appropriate for the model.
DegenerateSubspace ground_states(const ModelSpec& spec, const Vec3& point, GaugeMode mode);
DegenerateSubspace ground_states(const ModelSpec& spec, const Vec3& point);

struct EighResult {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

// Dense Hermitian eigensolver for slab-sized matrices (dim <= 1024).
EighResult dense_eigh(const Eigen::MatrixXcd& m);

// Unitary factor of the polar decomposition a = U P.
Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& a);
Mat2 polar_unitary(const Mat2& a);

}  // namespace naqgt
