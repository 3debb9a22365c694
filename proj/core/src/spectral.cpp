#include "naqgt/spectral.hpp"

#include "naqgt/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace naqgt {

namespace {

struct PivotFrame {
    Frame v = Frame::Zero();
    int pivot[2] = {0, 0};
};

// Index of the column with the largest norm; strict comparison keeps the lowest index on ties.
int largest_column(const Mat4& m)
{
    int best = 0;
    double norm = m.col(0).squaredNorm();
    for (int j = 1; j < 4; ++j) {
        const double nj = m.col(j).squaredNorm();
        if (nj > norm * (1.0 + 1e-12)) {
            best = j;
            norm = nj;
        }
    }
    return best;
}

Vec4 pivot_vector(const Mat4& p)
{
    const int j = largest_column(p);
    const double n = p.col(j).norm();
    if (n < 1e-8) throw NumericalError("projector has no usable column");
    return p.col(j) / n;
}

PivotFrame pivot_gram_schmidt(const Mat4& p)
{
    PivotFrame f;
    f.pivot[0] = largest_column(p);
    const Vec4 u1 = p.col(f.pivot[0]).normalized();
    const Mat4 r = p - u1 * (u1.adjoint() * p);
    f.pivot[1] = largest_column(r);
    const double n2 = r.col(f.pivot[1]).norm();
    if (n2 < 1e-8) throw NumericalError("projector has rank < 2");
    f.v.col(0) = u1;
    f.v.col(1) = r.col(f.pivot[1]) / n2;
    return f;
}

// Make the largest-modulus entry (lowest index on near ties) real and positive.
Vec4 phase_fixed(const Vec4& v)
{
    const double top = v.cwiseAbs().maxCoeff();
    int i = 0;
    while (std::abs(v[i]) < top * (1.0 - 1e-12)) ++i;
    const cplx z = v[i];
    return v * (std::conj(z) / std::abs(z));
}

Vec4 realified(const Vec4& v) { return v.real().cast<cplx>(); }

Frame gauge_pair(const Mat4& p, GaugeMode mode, const GaugeStructure& st)
{
    Frame out;
    const bool real = mode == GaugeMode::real_orthogonal;
    switch (st.kind) {
    case GaugeStructure::Kind::sector: {
        const Mat4 id = Mat4::Identity();
        out.col(0) = phase_fixed(pivot_vector(p * (id + st.op) / 2.0));
        out.col(1) = phase_fixed(pivot_vector(p * (id - st.op) / 2.0));
        break;
    }
    case GaugeStructure::Kind::complex_structure: {
        if (!real) throw ValidationError("a complex structure only fixes the real gauge");
        out.col(0) = realified(phase_fixed(realified(pivot_vector(p))));
        out.col(1) = realified(st.op * out.col(0));
        break;
    }
    case GaugeStructure::Kind::none: {
        PivotFrame f = pivot_gram_schmidt(p);
        out.col(0) = phase_fixed(f.v.col(0));
        out.col(1) = phase_fixed(f.v.col(1));
        if (real) {
            out.col(0) = realified(out.col(0));
            out.col(1) = realified(out.col(1));
            // orientation overrides the sign convention of psi_2
            const int a = std::min(f.pivot[0], f.pivot[1]);
            const int b = std::max(f.pivot[0], f.pivot[1]);
            const double det = (out(a, 0) * out(b, 1) - out(b, 0) * out(a, 1)).real();
            if (det < 0.0) out.col(1) = -out.col(1);
        }
        break;
    }
    }
    return out;
}

}  // namespace

DegenerateSubspace eigensystem(const Mat4& h, double gap_floor)
{
    const double scale = std::max(1.0, max_abs(h));
    if (!is_hermitian(h, 1e-10 * scale)) throw ValidationError("eigensystem: matrix is not Hermitian");
    const Mat4 h2 = h * h;
    const double e = std::sqrt(std::max(0.0, h2.trace().real() / 4.0));
    if (e < gap_floor) throw MonopoleProximity("eigensystem: band gap below floor (monopole point)");
    if (max_abs(h2 - e * e * Mat4::Identity()) > 1e-8 * std::max(1.0, e * e))
        throw ValidationError("eigensystem: spectrum is not of the form {-e,-e,+e,+e}");

    DegenerateSubspace s;
    s.e_minus = -e;
    s.e_plus = e;
    const Mat4 id = Mat4::Identity();
    s.projector = (id - h / e) / 2.0;
    const Mat4 p_plus = (id + h / e) / 2.0;
    PivotFrame g = pivot_gram_schmidt(s.projector);
    PivotFrame x = pivot_gram_schmidt(p_plus);
    for (int j = 0; j < 2; ++j) {
        s.ground.col(j) = phase_fixed(g.v.col(j));
        s.excited.col(j) = phase_fixed(x.v.col(j));
    }
    return s;
}

DegenerateSubspace fix_gauge(const DegenerateSubspace& sub, GaugeMode mode, const GaugeStructure& structure)
{
    const Mat4 id = Mat4::Identity();
    Mat4 p = sub.projector;
    Mat4 p_plus = id - p;
    if (mode == GaugeMode::real_orthogonal) {
        if (p.imag().cwiseAbs().maxCoeff() > 1e-10)
            throw GaugeError("real gauge requested for a genuinely complex ground subspace");
        p = p.real().cast<cplx>();
        p_plus = p_plus.real().cast<cplx>();
    }
    DegenerateSubspace out = sub;
    out.ground = gauge_pair(p, mode, structure);
    out.excited = gauge_pair(p_plus, mode, structure);
    return out;
}

GaugeMode default_gauge_mode(const ModelSpec& spec)
{
    return is_cp(spec.family) ? GaugeMode::complex_phase : GaugeMode::real_orthogonal;
}

GaugeStructure gauge_structure(const ModelSpec& spec, GaugeMode mode)
{
    GaugeStructure s;
    if (is_cp(spec.family)) {
        // sigma_x (x) s_0 commutes with the whole CP triple
        if (mode == GaugeMode::complex_phase) {
            s.kind = GaugeStructure::Kind::sector;
            s.op = sigma_s(1, 0);
        }
        return s;
    }
    if (mode == GaugeMode::complex_phase) {
        s.kind = GaugeStructure::Kind::sector;
        s.op = sigma_s(2, 0);
    } else {
        // i sigma_y (x) s_0 is real, squares to -1 and commutes with the C2T triple;
        // the sign fixes the orientation so that the plus monopole carries q = +n
        s.kind = GaugeStructure::Kind::complex_structure;
        s.op = cplx(0.0, 1.0) * sigma_s(2, 0);
    }
    return s;
}

DegenerateSubspace ground_states(const ModelSpec& spec, const Vec3& point, GaugeMode mode)
{
    return fix_gauge(eigensystem(hamiltonian(spec, point)), mode, gauge_structure(spec, mode));
}

DegenerateSubspace ground_states(const ModelSpec& spec, const Vec3& point)
{
    return ground_states(spec, point, default_gauge_mode(spec));
}

EighResult dense_eigh(const Eigen::MatrixXcd& m)
{
    if (m.rows() != m.cols()) throw ValidationError("dense_eigh: matrix is not square");
    if (m.rows() == 0 || m.rows() > 1024) throw ValidationError("dense_eigh: dimension must be in 1..1024");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ValidationError("dense_eigh: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw NumericalError("dense_eigh: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& a)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

Mat2 polar_unitary(const Mat2& a)
{
    Eigen::JacobiSVD<Mat2> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace naqgt
