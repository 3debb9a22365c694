#include "naqgt/clifford.hpp"

#include "naqgt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace naqgt {

Mat2 pauli(int i)
{
    const cplx I(0.0, 1.0);
    Mat2 m;
    switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw ValidationError("pauli index must be 0..3");
    }
    return m;
}

Mat4 kron(const Mat2& outer, const Mat2& inner)
{
    Mat4 m;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            m.block<2, 2>(2 * a, 2 * b) = outer(a, b) * inner;
    return m;
}

Mat4 sigma_s(int outer, int inner) { return kron(pauli(outer), pauli(inner)); }

int comm_index(int a, int b)
{
    if (a < 1 || b < 1 || a > 5 || b > 5 || a >= b)
        throw ValidationError("commutator index needs 1 <= a < b <= 5");
    // rows of the upper triangle: 1 -> 4 entries, 2 -> 3, 3 -> 2, 4 -> 1
    static constexpr int offset[5] = {0, 4, 7, 9, 10};
    return offset[a - 1] + (b - a - 1);
}

Mat4 CliffordSet::ab(int a, int b) const
{
    if (a == b) throw ValidationError("Gamma_aa is not part of the catalog");
    return a < b ? comm[comm_index(a, b)] : Mat4(-comm[comm_index(b, a)]);
}

CliffordSet build_clifford_set()
{
    CliffordSet s;
    s.gamma[0] = sigma_s(3, 1);
    s.gamma[1] = sigma_s(0, 2);
    s.gamma[2] = sigma_s(0, 3);
    s.gamma[3] = sigma_s(1, 1);
    s.gamma[4] = sigma_s(2, 1);
    const cplx two_i(0.0, 2.0);
    for (int a = 1; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b) {
            const Mat4& ga = s.gamma[a - 1];
            const Mat4& gb = s.gamma[b - 1];
            s.comm[comm_index(a, b)] = (ga * gb - gb * ga) / two_i;
        }
    return s;
}

std::array<Mat4, 10> tabulated_commutators()
{
    std::array<Mat4, 10> t;
    t[comm_index(1, 2)] = sigma_s(3, 3);
    t[comm_index(1, 3)] = -sigma_s(3, 2);
    t[comm_index(1, 4)] = sigma_s(2, 0);
    // printed as +sigma_x tau_0; the commutator definition gives the opposite sign
    t[comm_index(1, 5)] = -sigma_s(1, 0);
    t[comm_index(2, 3)] = sigma_s(0, 1);
    t[comm_index(2, 4)] = -sigma_s(1, 3);
    t[comm_index(2, 5)] = -sigma_s(2, 3);
    // printed as -sigma_x tau_y; same sign slip as Gamma_15
    t[comm_index(3, 4)] = sigma_s(1, 2);
    t[comm_index(3, 5)] = sigma_s(2, 2);
    t[comm_index(4, 5)] = sigma_s(3, 0);
    return t;
}

const std::array<Mat4, 3>& cp_triple()
{
    static const std::array<Mat4, 3> t = {sigma_s(1, 1), sigma_s(0, 2), sigma_s(1, 3)};
    return t;
}

const std::array<Mat4, 3>& c2t_triple()
{
    static const std::array<Mat4, 3> t = {sigma_s(0, 3), sigma_s(2, 2), sigma_s(0, 1)};
    return t;
}

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Mat4& m, double tol) { return max_abs(m - m.adjoint()) <= tol; }

double anticommutator_check(std::span<const Mat4> gammas)
{
    double worst = 0.0;
    const Mat4 id = Mat4::Identity();
    for (std::size_t a = 0; a < gammas.size(); ++a)
        for (std::size_t b = 0; b < gammas.size(); ++b) {
            Mat4 r = gammas[a] * gammas[b] + gammas[b] * gammas[a];
            if (a == b) r -= 2.0 * id;
            worst = std::max(worst, max_abs(r));
        }
    return worst;
}

double anticommutator_check(const CliffordSet& set) { return anticommutator_check(std::span<const Mat4>(set.gamma)); }

double check_global_degeneracy(const std::function<Mat4(const Vec3&)>& h, const std::vector<Vec3>& samples)
{
    double worst = 0.0;
    for (const auto& k : samples) {
        const Mat4 m = h(k);
        if (!is_hermitian(m, 1e-12 * std::max(1.0, max_abs(m))))
            throw ValidationError("check_global_degeneracy: Hamiltonian is not Hermitian");
        const Mat4 sq = m * m;
        const double f = sq.trace().real() / 4.0;
        worst = std::max(worst, max_abs(sq - f * Mat4::Identity()));
    }
    return worst;
}

}  // namespace naqgt
