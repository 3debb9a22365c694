#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace naqgt {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;

// Pauli matrix by index: 0 -> identity, 1..3 -> x, y, z.
Mat2 pauli(int i);

// sigma is the outer 2x2 block index, s (or tau) the inner one.
Mat4 kron(const Mat2& outer, const Mat2& inner);
Mat4 sigma_s(int outer, int inner);

struct CliffordSet {
    std::array<Mat4, 5> gamma;
    // Gamma_ab for a<b stored in lexicographic order (12,13,...,45).
    std::array<Mat4, 10> comm;

    // 1-based generator indices with a != b; Gamma_ba = -Gamma_ab.
    Mat4 ab(int a, int b) const;
};

int comm_index(int a, int b);

CliffordSet build_clifford_set();

// Gamma_ab written out from the explicit table rather than computed.
std::array<Mat4, 10> tabulated_commutators();

// Matrices used by the two model families.
const std::array<Mat4, 3>& cp_triple();
const std::array<Mat4, 3>& c2t_triple();

// max_{a,b} |{G_a,G_b} - 2 delta_ab I|_inf
double anticommutator_check(std::span<const Mat4> gammas);
double anticommutator_check(const CliffordSet& set);

double max_abs(const Mat4& m);
bool is_hermitian(const Mat4& m, double tol = 1e-14);

// max over samples of |H^2 - f I|_inf with f = Tr(H^2)/4.
double check_global_degeneracy(const std::function<Mat4(const Vec3&)>& h,
                               const std::vector<Vec3>& samples);

}  // namespace naqgt
