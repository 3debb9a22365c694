#pragma once

// Reference computations that avoid the library's own code paths: literal Pauli
// entries, a generic complex eigensolver, and overlap-determinant plaquettes.

#include "naqgt/models.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double pi = std::numbers::pi;

inline Mat2 pauli_literal(int i)
{
    const cplx I(0.0, 1.0);
    Mat2 m;
    switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
    }
    return m;
}

// Kronecker product written entry by entry: outer index picks the 2x2 block.
inline Mat4 kron_literal(const Mat2& a, const Mat2& b)
{
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

inline Mat4 ps(int outer, int inner) { return kron_literal(pauli_literal(outer), pauli_literal(inner)); }

// Lattice Bloch components (d_x, d_y, d_z) before the n-th power composition.
inline Eigen::Vector3d raw_lattice(double t, double mass, const Eigen::Vector3d& k)
{
    return {2 * t * std::sin(k[0]), 2 * t * std::sin(k[1]),
            2 * t * (mass - std::cos(k[0]) - std::cos(k[1]) - std::cos(k[2]))};
}

inline double dispersion(int n, const Eigen::Vector3d& d)
{
    return std::sqrt(std::pow(d[0] * d[0] + d[1] * d[1], n) + d[2] * d[2]);
}

// Sorted eigenvalues from Eigen's general complex eigensolver (no Hermitian assumption).
inline std::vector<double> general_eigenvalues(const Mat4& h)
{
    Eigen::ComplexEigenSolver<Mat4> es(h);
    std::vector<double> v;
    for (int i = 0; i < 4; ++i) v.push_back(es.eigenvalues()[i].real());
    std::sort(v.begin(), v.end());
    return v;
}

// Lowest two eigenvectors in whatever gauge the dense solver returns.
inline Eigen::Matrix<cplx, 4, 2> raw_ground(const Mat4& h)
{
    Eigen::SelfAdjointEigenSolver<Mat4> es(h);
    return es.eigenvectors().leftCols(2);
}

// Fukui-Hatsugai-Suzuki Chern number of the lower doublet from overlap determinants, with the
// Berry connection A = i<u|du> (a link <u_k|u_k+dk> carries phase -A dk, hence the minus sign).
template <class H>
double plaquette_chern(H&& hamiltonian, double kz, int n)
{
    std::vector<Eigen::Matrix<cplx, 4, 2>> frames(static_cast<std::size_t>(n) * n);
    const double step = 2 * pi / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            frames[i * n + j] = raw_ground(hamiltonian(Eigen::Vector3d(-pi + i * step, -pi + j * step, kz)));
    auto link = [&](int i0, int j0, int i1, int j1) {
        const cplx d = (frames[((i0 + n) % n) * n + (j0 + n) % n].adjoint() * frames[((i1 + n) % n) * n + (j1 + n) % n])
                           .determinant();
        return d / std::abs(d);
    };
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx u = link(i, j, i + 1, j) * link(i + 1, j, i + 1, j + 1) * link(i + 1, j + 1, i, j + 1) *
                           link(i, j + 1, i, j);
            total += std::arg(u);
        }
    return -total / (2 * pi);
}

inline std::vector<Eigen::Vector3d> random_points(int count, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-pi, pi);
    std::vector<Eigen::Vector3d> out;
    for (int i = 0; i < count; ++i) out.emplace_back(u(rng), u(rng), u(rng));
    return out;
}

}  // namespace oracle
