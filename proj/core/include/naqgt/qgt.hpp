#pragma once

#include "naqgt/models.hpp"
#include "naqgt/spectral.hpp"

#include <utility>

namespace naqgt {

struct QGTBlock {
    Mat2 q = Mat2::Zero();
    Mat2 g = Mat2::Zero();
    Mat2 f = Mat2::Zero();
    int mu = 0;
    int nu = 0;
};

struct GeometryScalars {
    // Tr g_mumu, Tr g_munu, Tr g_nunu
    std::array<double, 3> tr_g{0.0, 0.0, 0.0};
    double det_g_mat = 0.0;
    double solid_angle_density = 0.0;
    double tr_f = 0.0;
    // Im F^{12}, which is the Euler curvature in the real gauge; 0 for CP models
    double eu = 0.0;
};

QGTBlock qgt_block(const ModelSpec& spec, const Vec3& point, int mu, int nu);
QGTBlock qgt_block(const ModelSpec& spec, const Vec3& point, int mu, int nu, GaugeMode mode);
// Same, reusing an already gauge-fixed subspace at the point.
QGTBlock qgt_block(const ModelSpec& spec, const Vec3& point, const DegenerateSubspace& sub, int mu, int nu);

GeometryScalars geometry_scalars(const ModelSpec& spec, const Vec3& point, int mu, int nu);

// Unit Bloch vector and its parameter derivatives.
struct UnitBloch {
    Vec3 dhat = Vec3::Zero();
    Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
    double norm = 0.0;
};
UnitBloch unit_bloch(const ModelSpec& spec, const Vec3& point);

// 1/2 d_mu dhat . d_nu dhat
double trace_metric(const ModelSpec& spec, const Vec3& point, int mu, int nu);
// eps_abc dhat_a d_mu dhat_b d_nu dhat_c
double solid_angle_density(const ModelSpec& spec, const Vec3& point, int mu, int nu);

// lhs = sqrt(det G) with G = 2 [[Tr g_mumu, Tr g_munu], [Tr g_numu, Tr g_nunu]] from the
// sum over states; rhs = |solid angle density| from the Bloch-vector analytics.
std::pair<double, double> det_relation(const ModelSpec& spec, const Vec3& point, int mu, int nu);

struct EulerCurvature {
    double value = 0.0;              // closed form with the gauge sign
    double finite_difference = 0.0;  // aligned real frames, step 1e-5
};

// Throws GaugeError for CP models and ResolutionError if the two routes disagree by more than 1e-6.
EulerCurvature euler_curvature(const ModelSpec& spec, const Vec3& point, int mu = 0, int nu = 1);

struct DistancePair {
    double exact = 0.0;
    double quadratic = 0.0;
};

DistancePair quantum_distance(const ModelSpec& spec, const Vec3& point, const Vec3& dlambda,
                              const Eigen::Vector2cd& coeffs);

}  // namespace naqgt
