#pragma once

#include "naqgt/clifford.hpp"

#include <array>
#include <string>

namespace naqgt {

enum class Family {
    cp_lattice,
    c2t_lattice,
    cp_effective_plus,
    cp_effective_minus,
    c2t_effective_plus,
    c2t_effective_minus,
    cp_sphere_plus,
    cp_sphere_minus,
    c2t_sphere_plus,
    c2t_sphere_minus,
};

std::string to_string(Family f);
Family family_from_string(const std::string& name);

bool is_cp(Family f);
bool is_lattice(Family f);
bool is_effective(Family f);
bool is_sphere(Family f);
// +1 for the "plus" monopole branch, -1 for "minus", 0 for lattice models.
int branch_sign(Family f);

struct ModelSpec {
    Family family = Family::cp_lattice;
    int n = 1;
    std::array<int, 3> alpha{1, 1, 1};
    double mass = 2.0;
    double t = 0.5;
    // Radius q of the sphere families; only their energy scale depends on it.
    double radius = 0.1;

    void validate() const;
    // 3 for momentum-space models, 2 for (theta, phi) sphere models.
    int n_params() const;
    double alpha_sign() const { return alpha[0] * alpha[1] * alpha[2]; }
};

// Points are always 3-vectors; sphere models read (theta, phi) and ignore the third slot.
struct BlochVector {
    Vec3 d = Vec3::Zero();
    // grad(r, mu) = d d_r / d lambda_mu; unused columns are zero.
    Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
};

struct SphereCoords {
    double theta = 0.0;
    double phi = 0.0;
    double q = 1.0;
};

const std::array<Mat4, 3>& model_triple(const ModelSpec& spec);

BlochVector bloch_vector(const ModelSpec& spec, const Vec3& point);
// Value only, no gradient; used in the time integrator's inner loop.
Vec3 bloch_value(const ModelSpec& spec, const Vec3& point);

// Bloch vector along a path on which only some coordinates move; the trigonometric
// factors of the fixed coordinates are computed once. Used by the time integrator.
class BlochPath {
public:
    BlochPath(const ModelSpec& spec, const Vec3& base, std::array<bool, 3> varying);
    Vec3 operator()(const Vec3& point) const;
    // Lattice value at base + shift on every varying coordinate, from cos and sin of the shift.
    Vec3 shifted(double cos_shift, double sin_shift) const;

private:
    ModelSpec spec_;
    std::array<bool, 3> varying_;
    std::array<double, 3> sin_{}, cos_{};
    cplx phase_{1.0, 0.0};
};

Mat4 assemble(const ModelSpec& spec, const Vec3& d);
Mat4 hamiltonian(const ModelSpec& spec, const Vec3& point);
Mat4 d_hamiltonian(const ModelSpec& spec, const Vec3& point, int mu);

// sqrt((x^2+y^2)^n + z^2) from the raw (unsigned, un-composed) components.
double analytic_energy(const ModelSpec& spec, const Vec3& point);

// Bloch vector of a sphere family at (theta, phi) and radius s.q.
BlochVector sphere_embed(const ModelSpec& spec, const SphereCoords& s);
// Momentum offset from the monopole for the (q sin theta)^{1/n} parametrization.
Vec3 sphere_momentum(int n, const SphereCoords& s);
// Monopole location of an effective or sphere family.
Vec3 monopole_center(Family f);

Mat4 atomic_hamiltonian_cp(const Vec3& d);
Mat4 atomic_hamiltonian_c2t(const Vec3& d);

struct AtomicMatch {
    double residual = 0.0;
    std::array<int, 4> perm{0, 1, 2, 3};
    bool conjugated = false;
};

// Best match of the four-level Hamiltonian against the n=1 Dirac model over
// all 24 level relabelings, optionally after complex conjugation.
AtomicMatch atomic_equivalence(bool cp_family, const Vec3& d);

}  // namespace naqgt
