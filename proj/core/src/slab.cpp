#include "naqgt/slab.hpp"

#include "naqgt/errors.hpp"
#include "naqgt/parallel.hpp"
#include "naqgt/spectral.hpp"

#include <cmath>
#include <numbers>

namespace naqgt {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int n_samples = 64;

}  // namespace

HoppingSeries fourier_hoppings(const ModelSpec& spec, int open_axis, const Vec3& fixed_k)
{
    spec.validate();
    if (!is_lattice(spec.family)) throw ValidationError("slab geometry needs a lattice family");
    if (open_axis < 0 || open_axis > 2) throw ValidationError("open axis must be 0, 1 or 2");

    std::vector<Mat4> samples(n_samples);
    std::vector<double> ks(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        ks[j] = 2.0 * pi * j / n_samples;
        Vec3 k = fixed_k;
        k[open_axis] = ks[j];
        samples[j] = hamiltonian(spec, k);
    }

    HoppingSeries h;
    h.open_axis = open_axis;
    for (int m = -n_samples / 2 + 1; m < n_samples / 2; ++m) {
        Mat4 t = Mat4::Zero();
        for (int j = 0; j < n_samples; ++j) t += samples[j] * std::exp(cplx(0.0, -m * ks[j]));
        t /= static_cast<double>(n_samples);
        if (max_abs(t) >= 1e-12) h.terms[m] = t;
    }

    double resid = 0.0;
    for (int j = 0; j < n_samples; ++j) {
        Vec3 k = fixed_k;
        k[open_axis] = ks[j] + pi / n_samples;
        resid = std::max(resid, max_abs(reassemble(h, k[open_axis]) - hamiltonian(spec, k)));
    }
    if (resid > 1e-10) throw RangeError("hopping series does not reproduce H(k); increase sampling");
    return h;
}

Mat4 reassemble(const HoppingSeries& h, double k)
{
    Mat4 out = Mat4::Zero();
    for (const auto& [m, t] : h.terms) out += t * std::exp(cplx(0.0, m * k));
    return out;
}

Eigen::MatrixXcd slab_matrix(const HoppingSeries& h, int n_sites)
{
    if (n_sites < 1 || 4 * n_sites > 1024) throw ValidationError("slab size must keep the matrix within 1024");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4 * n_sites, 4 * n_sites);
    for (int r = 0; r < n_sites; ++r)
        for (const auto& [d, t] : h.terms) {
            const int c = r + d;
            if (c < 0 || c >= n_sites) continue;
            m.block<4, 4>(4 * r, 4 * c) = t;
        }
    return m;
}

SlabSpectrum slab_spectrum(const ModelSpec& spec, int open_axis, int n_sites, const Vec3& k)
{
    if (n_sites < 2 * edge_sites) throw ValidationError("slab needs more sites than the two edge windows");
    const HoppingSeries h = fourier_hoppings(spec, open_axis, k);
    const EighResult eig = dense_eigh(slab_matrix(h, n_sites));
    SlabSpectrum s;
    s.transverse_k = k;
    s.transverse_k[open_axis] = 0.0;
    s.energies = eig.values;
    s.edge_weight.resize(eig.values.size());
    const int w = 4 * edge_sites;
    const int dim = 4 * n_sites;
    for (int i = 0; i < dim; ++i) {
        const auto v = eig.vectors.col(i);
        s.edge_weight[i] = std::min(1.0, v.head(w).squaredNorm() + v.tail(w).squaredNorm());
    }
    return s;
}

std::vector<SlabSpectrum> slab_sweep(const ModelSpec& spec, int open_axis, int n_sites, const Vec3& fixed_k,
                                     int sweep_axis, const std::vector<double>& sweep, int threads)
{
    if (sweep_axis == open_axis || sweep_axis < 0 || sweep_axis > 2)
        throw ValidationError("sweep axis must differ from the open axis");
    std::vector<SlabSpectrum> out(sweep.size());
    parallel_for(
        sweep.size(),
        [&](std::size_t i) {
            Vec3 k = fixed_k;
            k[sweep_axis] = sweep[i];
            out[i] = slab_spectrum(spec, open_axis, n_sites, k);
        },
        threads);
    return out;
}

}  // namespace naqgt
