#include "naqgt/models.hpp"

#include "naqgt/errors.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

namespace naqgt {

namespace {

constexpr double pi = std::numbers::pi;

struct FamilyName {
    Family f;
    const char* name;
};

constexpr FamilyName family_names[] = {
    {Family::cp_lattice, "cp_lattice"},
    {Family::c2t_lattice, "c2t_lattice"},
    {Family::cp_effective_plus, "cp_effective_plus"},
    {Family::cp_effective_minus, "cp_effective_minus"},
    {Family::c2t_effective_plus, "c2t_effective_plus"},
    {Family::c2t_effective_minus, "c2t_effective_minus"},
    {Family::cp_sphere_plus, "cp_sphere_plus"},
    {Family::cp_sphere_minus, "cp_sphere_minus"},
    {Family::c2t_sphere_plus, "c2t_sphere_plus"},
    {Family::c2t_sphere_minus, "c2t_sphere_minus"},
};

cplx ipow(cplx w, int n)
{
    double re = 1.0, im = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = re * w.real() - im * w.imag();
        im = re * w.imag() + im * w.real();
        re = t;
    }
    return {re, im};
}

// Raw components (x, y, z) and their gradients before the n-th power is taken.
struct Raw {
    Vec3 v = Vec3::Zero();
    Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
};

Raw lattice_raw(const ModelSpec& s, const Vec3& k, bool with_grad)
{
    Raw r;
    const double two_t = 2.0 * s.t;
    const double sx = std::sin(k[0]), cx = std::cos(k[0]);
    const double sy = std::sin(k[1]), cy = std::cos(k[1]);
    const double sz = std::sin(k[2]), cz = std::cos(k[2]);
    r.v << two_t * sx, two_t * sy, two_t * (s.mass - cx - cy - cz);
    if (with_grad) {
        r.grad(0, 0) = two_t * cx;
        r.grad(1, 1) = two_t * cy;
        r.grad(2, 0) = two_t * sx;
        r.grad(2, 1) = two_t * sy;
        r.grad(2, 2) = two_t * sz;
    }
    return r;
}

Raw effective_raw(const ModelSpec& s, const Vec3& k)
{
    Raw r;
    r.v = k - monopole_center(s.family);
    r.grad = Eigen::Matrix3d::Identity();
    return r;
}

// Sign pattern applied to (Re w^n, Im w^n, z) on top of alpha.
Vec3 family_signs(Family f)
{
    const double b = branch_sign(f) == 0 ? 1.0 : branch_sign(f);
    const bool c2t_low_energy = !is_cp(f) && !is_lattice(f);
    const double xy = c2t_low_energy ? -1.0 : 1.0;
    return Vec3(xy, xy, b);
}

BlochVector compose(const ModelSpec& s, const Raw& r, bool with_grad)
{
    const Vec3 sg = family_signs(s.family);
    const Vec3 a(s.alpha[0] * sg[0], s.alpha[1] * sg[1], s.alpha[2] * sg[2]);
    const cplx w(r.v[0], r.v[1]);
    const cplx wn1 = ipow(w, s.n - 1);
    const cplx wn = wn1 * w;
    BlochVector b;
    b.d << a[0] * wn.real(), a[1] * wn.imag(), a[2] * r.v[2];
    if (with_grad) {
        for (int mu = 0; mu < 3; ++mu) {
            const cplx dwn = static_cast<double>(s.n) * wn1 * cplx(r.grad(0, mu), r.grad(1, mu));
            b.grad(0, mu) = a[0] * dwn.real();
            b.grad(1, mu) = a[1] * dwn.imag();
            b.grad(2, mu) = a[2] * r.grad(2, mu);
        }
    }
    return b;
}

BlochVector sphere_vector(const ModelSpec& s, double theta, double phi, double q, bool with_grad)
{
    const Vec3 sg = family_signs(s.family);
    const Vec3 a(s.alpha[0] * sg[0], s.alpha[1] * sg[1], s.alpha[2] * sg[2]);
    // (q_x + i q_y)^n = q sin(theta) i^n e^{-i n phi} for the (q sin theta)^{1/n} parametrization
    const cplx c = ipow(cplx(0.0, 1.0), s.n) * std::exp(cplx(0.0, -s.n * phi));
    const double st = std::sin(theta), ct = std::cos(theta);
    BlochVector b;
    b.d << q * a[0] * st * c.real(), q * a[1] * st * c.imag(), q * a[2] * ct;
    if (with_grad) {
        const cplx dc = cplx(0.0, -static_cast<double>(s.n)) * c;
        b.grad(0, 0) = q * a[0] * ct * c.real();
        b.grad(1, 0) = q * a[1] * ct * c.imag();
        b.grad(2, 0) = -q * a[2] * st;
        b.grad(0, 1) = q * a[0] * st * dc.real();
        b.grad(1, 1) = q * a[1] * st * dc.imag();
    }
    return b;
}

BlochVector evaluate(const ModelSpec& s, const Vec3& p, bool with_grad)
{
    if (is_sphere(s.family)) return sphere_vector(s, p[0], p[1], s.radius, with_grad);
    if (is_lattice(s.family)) return compose(s, lattice_raw(s, p, with_grad), with_grad);
    return compose(s, effective_raw(s, p), with_grad);
}

}  // namespace

std::string to_string(Family f)
{
    for (const auto& e : family_names)
        if (e.f == f) return e.name;
    throw ValidationError("unknown family");
}

Family family_from_string(const std::string& name)
{
    for (const auto& e : family_names)
        if (name == e.name) return e.f;
    throw ValidationError("unknown model family '" + name + "'");
}

bool is_cp(Family f)
{
    switch (f) {
    case Family::cp_lattice:
    case Family::cp_effective_plus:
    case Family::cp_effective_minus:
    case Family::cp_sphere_plus:
    case Family::cp_sphere_minus: return true;
    default: return false;
    }
}

bool is_lattice(Family f) { return f == Family::cp_lattice || f == Family::c2t_lattice; }

bool is_effective(Family f)
{
    return f == Family::cp_effective_plus || f == Family::cp_effective_minus || f == Family::c2t_effective_plus ||
           f == Family::c2t_effective_minus;
}

bool is_sphere(Family f) { return !is_lattice(f) && !is_effective(f); }

int branch_sign(Family f)
{
    switch (f) {
    case Family::cp_effective_plus:
    case Family::c2t_effective_plus:
    case Family::cp_sphere_plus:
    case Family::c2t_sphere_plus: return 1;
    case Family::cp_effective_minus:
    case Family::c2t_effective_minus:
    case Family::cp_sphere_minus:
    case Family::c2t_sphere_minus: return -1;
    default: return 0;
    }
}

void ModelSpec::validate() const
{
    if (n < 1 || n > 8) throw ValidationError("winding order n must be in 1..8");
    for (int a : alpha)
        if (a != 1 && a != -1) throw ValidationError("alpha components must be +1 or -1");
    if (!std::isfinite(mass)) throw ValidationError("mass must be finite");
    if (!std::isfinite(t) || t <= 0.0) throw ValidationError("hopping t must be positive");
    if (!std::isfinite(radius) || radius <= 0.0) throw ValidationError("sphere radius must be positive");
}

int ModelSpec::n_params() const { return is_sphere(family) ? 2 : 3; }

const std::array<Mat4, 3>& model_triple(const ModelSpec& spec)
{
    return is_cp(spec.family) ? cp_triple() : c2t_triple();
}

BlochVector bloch_vector(const ModelSpec& spec, const Vec3& point) { return evaluate(spec, point, true); }

Vec3 bloch_value(const ModelSpec& spec, const Vec3& point) { return evaluate(spec, point, false).d; }

BlochPath::BlochPath(const ModelSpec& spec, const Vec3& base, std::array<bool, 3> varying)
    : spec_(spec), varying_(varying)
{
    for (int i = 0; i < 3; ++i) {
        sin_[i] = std::sin(base[i]);
        cos_[i] = std::cos(base[i]);
    }
    if (is_sphere(spec.family)) phase_ = ipow(cplx(0.0, 1.0), spec.n) * std::exp(cplx(0.0, -spec.n * base[1]));
}

Vec3 BlochPath::operator()(const Vec3& p) const
{
    if (is_effective(spec_.family)) return bloch_value(spec_, p);
    double sn[3], cs[3];
    for (int i = 0; i < 3; ++i) {
        if (varying_[i]) {
            sn[i] = std::sin(p[i]);
            cs[i] = std::cos(p[i]);
        } else {
            sn[i] = sin_[i];
            cs[i] = cos_[i];
        }
    }
    const Vec3 sg = family_signs(spec_.family);
    const double ax = spec_.alpha[0] * sg[0], ay = spec_.alpha[1] * sg[1], az = spec_.alpha[2] * sg[2];
    if (is_sphere(spec_.family)) {
        const cplx c = varying_[1] ? ipow(cplx(0.0, 1.0), spec_.n) * std::exp(cplx(0.0, -spec_.n * p[1])) : phase_;
        const double q = spec_.radius;
        return Vec3(q * ax * sn[0] * c.real(), q * ay * sn[0] * c.imag(), q * az * cs[0]);
    }
    const double two_t = 2.0 * spec_.t;
    const cplx wn = ipow(cplx(two_t * sn[0], two_t * sn[1]), spec_.n);
    return Vec3(ax * wn.real(), ay * wn.imag(), az * two_t * (spec_.mass - cs[0] - cs[1] - cs[2]));
}

Vec3 BlochPath::shifted(double c, double s) const
{
    if (!is_lattice(spec_.family)) throw ValidationError("shifted evaluation needs a lattice family");
    double sn[3], cs[3];
    for (int i = 0; i < 3; ++i) {
        if (varying_[i]) {
            sn[i] = sin_[i] * c + cos_[i] * s;
            cs[i] = cos_[i] * c - sin_[i] * s;
        } else {
            sn[i] = sin_[i];
            cs[i] = cos_[i];
        }
    }
    const Vec3 sg = family_signs(spec_.family);
    const double two_t = 2.0 * spec_.t;
    const cplx wn = ipow(cplx(two_t * sn[0], two_t * sn[1]), spec_.n);
    return Vec3(spec_.alpha[0] * sg[0] * wn.real(), spec_.alpha[1] * sg[1] * wn.imag(),
                spec_.alpha[2] * sg[2] * two_t * (spec_.mass - cs[0] - cs[1] - cs[2]));
}

Mat4 assemble(const ModelSpec& spec, const Vec3& d)
{
    const auto& g = model_triple(spec);
    return d[0] * g[0] + d[1] * g[1] + d[2] * g[2];
}

Mat4 hamiltonian(const ModelSpec& spec, const Vec3& point) { return assemble(spec, bloch_value(spec, point)); }

Mat4 d_hamiltonian(const ModelSpec& spec, const Vec3& point, int mu)
{
    if (mu < 0 || mu >= spec.n_params())
        throw ValidationError("parameter index " + std::to_string(mu) + " is not active for " + to_string(spec.family));
    return assemble(spec, bloch_vector(spec, point).grad.col(mu));
}

double analytic_energy(const ModelSpec& spec, const Vec3& point)
{
    if (is_sphere(spec.family)) return spec.radius;
    Raw r = is_lattice(spec.family) ? lattice_raw(spec, point, false) : effective_raw(spec, point);
    const double rho2 = r.v[0] * r.v[0] + r.v[1] * r.v[1];
    return std::sqrt(std::pow(rho2, spec.n) + r.v[2] * r.v[2]);
}

Vec3 monopole_center(Family f)
{
    const double z = branch_sign(f) * pi / 2.0;
    if (is_lattice(f)) throw ValidationError("lattice families have no single monopole center");
    return is_cp(f) ? Vec3(0.0, 0.0, z) : Vec3(pi, pi, z);
}

Vec3 sphere_momentum(int n, const SphereCoords& s)
{
    const double rho = std::pow(s.q * std::sin(s.theta), 1.0 / n);
    return Vec3(rho * std::sin(s.phi), rho * std::cos(s.phi), s.q * std::cos(s.theta));
}

BlochVector sphere_embed(const ModelSpec& spec, const SphereCoords& s)
{
    if (!is_sphere(spec.family)) throw ValidationError("sphere_embed needs a sphere family");
    if (!(s.q > 0.0)) throw ValidationError("sphere radius must be positive");
    if (!(s.theta > 0.0 && s.theta <= pi)) throw ValidationError("theta must lie in (0, pi]");
    return sphere_vector(spec, s.theta, s.phi, s.q, true);
}

Mat4 atomic_hamiltonian_cp(const Vec3& d)
{
    const cplx I(0.0, 1.0);
    const double om[6] = {d[1], d[2], d[0], d[0], -d[2], d[1]};
    Mat4 h;
    h << 0.0, I * om[0], om[1], om[2],
         -I * om[0], 0.0, om[3], om[4],
         om[1], om[3], 0.0, I * om[5],
         om[2], om[4], -I * om[5], 0.0;
    return h;
}

Mat4 atomic_hamiltonian_c2t(const Vec3& d)
{
    const double det[4] = {d[0], -d[0], d[0], -d[0]};
    const double om[4] = {d[2], -d[1], d[1], d[2]};
    Mat4 h;
    h << det[0], om[0], 0.0, om[1],
         om[0], det[1], om[2], 0.0,
         0.0, om[2], det[2], om[3],
         om[1], 0.0, om[3], det[3];
    return h;
}

AtomicMatch atomic_equivalence(bool cp_family, const Vec3& d)
{
    ModelSpec target;
    target.family = cp_family ? Family::cp_lattice : Family::c2t_lattice;
    const Mat4 h = assemble(target, d);
    const Mat4 atomic = cp_family ? atomic_hamiltonian_cp(d) : atomic_hamiltonian_c2t(d);

    AtomicMatch best;
    best.residual = std::numeric_limits<double>::infinity();
    for (bool conj : {false, true}) {
        const Mat4 a = conj ? Mat4(atomic.conjugate()) : atomic;
        std::array<int, 4> p{0, 1, 2, 3};
        do {
            double r = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(a(p[i], p[j]) - h(i, j)));
            if (r < best.residual) best = {r, p, conj};
        } while (std::next_permutation(p.begin(), p.end()));
        // conjugation is only a fallback
        if (best.residual < 1e-12) break;
    }
    return best;
}

}  // namespace naqgt
