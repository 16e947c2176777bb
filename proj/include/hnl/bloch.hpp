#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "hnl/algebra.hpp"
#include "hnl/errors.hpp"
#include "hnl/rng.hpp"

namespace hnl {

// Tolerance for algebraic identities the library maintains internally.
inline constexpr double kAlgebraTol = 1e-12;
// Tolerance applied to user-supplied data.
inline constexpr double kInputTol = 1e-9;

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }

    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }

    BlochVector operator+(const BlochVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator-() const { return {-x, -y, -z}; }
    friend BlochVector operator*(double s, const BlochVector& v) {
        return {s * v.x, s * v.y, s * v.z};
    }

    BlochVector unit() const {
        const double n = norm();
        if (n < 1e-12) throw ZeroVector("cannot normalize a zero Bloch vector");
        return {x / n, y / n, z / n};
    }
};

// Normalized two-amplitude pure state. The global phase is fixed so the
// first amplitude with modulus above 1e-12 is real and nonnegative, making
// state equality a plain field comparison.
class PureQubit {
public:
    PureQubit() : a0_(1.0), a1_(0.0) {}

    PureQubit(cplx a0, cplx a1) {
        const double n2 = std::norm(a0) + std::norm(a1);
        if (n2 <= 1e-24) throw ZeroVector("pure state amplitudes are all zero");
        const double inv = 1.0 / std::sqrt(n2);
        a0 *= inv;
        a1 *= inv;
        const bool lead_is_a0 = std::abs(a0) > 1e-12;
        const cplx lead = lead_is_a0 ? a0 : a1;
        const double mod = std::abs(lead);
        const cplx rot = std::conj(lead) / mod;
        a0 *= rot;
        a1 *= rot;
        if (lead_is_a0) a0 = mod; else a1 = mod;
        a0_ = a0;
        a1_ = a1;
    }

    cplx a0() const { return a0_; }
    cplx a1() const { return a1_; }

    static PureQubit ket0() { return {}; }
    static PureQubit ket1() { return PureQubit(cplx{0.0}, cplx{1.0}); }

private:
    cplx a0_, a1_;
};

inline PureQubit pure_from_amplitudes(cplx a0, cplx a1) { return {a0, a1}; }

// <q1|q2>
inline cplx inner(const PureQubit& q1, const PureQubit& q2) {
    return std::conj(q1.a0()) * q2.a0() + std::conj(q1.a1()) * q2.a1();
}

// |<q1|q2>|^2
inline double overlap(const PureQubit& q1, const PureQubit& q2) {
    return std::norm(inner(q1, q2));
}

inline BlochVector bloch_from_pure(const PureQubit& q) {
    const cplx c = std::conj(q.a0()) * q.a1();
    return {2.0 * c.real(), 2.0 * c.imag(), std::norm(q.a0()) - std::norm(q.a1())};
}

inline PureQubit pure_from_bloch(const BlochVector& v) {
    if (std::abs(v.norm() - 1.0) >= kInputTol)
        throw NotPure("Bloch vector is not on the unit sphere");
    const double z = std::min(1.0, std::max(-1.0, v.z));
    const double m0 = std::sqrt(0.5 * (1.0 + z));
    const double m1 = std::sqrt(0.5 * (1.0 - z));
    const double r = std::hypot(v.x, v.y);
    cplx phase{1.0, 0.0};
    if (r > 1e-15) phase = cplx{v.x / r, v.y / r};
    return {cplx{m0}, m1 * phase};
}

// |q><q|
inline Mat2 outer(const PureQubit& q) {
    Mat2 m;
    m(0, 0) = q.a0() * std::conj(q.a0());
    m(0, 1) = q.a0() * std::conj(q.a1());
    m(1, 0) = q.a1() * std::conj(q.a0());
    m(1, 1) = q.a1() * std::conj(q.a1());
    return m;
}

// Unit-trace positive hermitian 2x2 operator; validated on construction.
class DensityOperator {
public:
    static DensityOperator from_matrix(const Mat2& m) {
        if (m.hermiticity_defect() >= kAlgebraTol)
            throw InvalidState("density operator is not hermitian");
        if (std::abs(m.trace().real() - 1.0) >= kAlgebraTol || std::abs(m.trace().imag()) >= kAlgebraTol)
            throw InvalidState("density operator trace is not 1");
        if (m.hermitian_eigenvalues()[0] < -kAlgebraTol)
            throw InvalidState("density operator has a negative eigenvalue");
        return DensityOperator(m);
    }

    static DensityOperator from_pure(const PureQubit& q) { return DensityOperator(outer(q)); }

    static DensityOperator from_bloch(const BlochVector& v) {
        if (v.norm() > 1.0 + kAlgebraTol)
            throw InvalidState("Bloch vector lies outside the unit ball");
        Mat2 m = 0.5 * (Mat2::identity() + v.x * pauli_x() + v.y * pauli_y() + v.z * pauli_z());
        return DensityOperator(m);
    }

    const Mat2& matrix() const { return m_; }

    BlochVector bloch() const {
        return {2.0 * m_(0, 1).real(), -2.0 * m_(0, 1).imag(),
                m_(0, 0).real() - m_(1, 1).real()};
    }

private:
    explicit DensityOperator(const Mat2& m) : m_(m) {}
    Mat2 m_;
};

inline DensityOperator
density_from_mixture(const std::vector<std::pair<double, PureQubit>>& parts) {
    if (parts.empty()) throw BadDistribution("mixture has no components");
    double sum = 0.0;
    for (const auto& [prob, state] : parts) {
        if (prob < -kAlgebraTol) throw BadDistribution("mixture probability is negative");
        sum += prob;
    }
    if (std::abs(sum - 1.0) >= kAlgebraTol)
        throw BadDistribution("mixture probabilities do not sum to 1");
    Mat2 m = Mat2::zero();
    for (const auto& [prob, state] : parts) m = m + prob * outer(state);
    return DensityOperator::from_matrix(m);
}

// The theta-parameterized state family, placed in a fixed frame: every Bloch
// vector lies in the x-z plane with the bisector along +z, so all five states
// have real amplitudes.
//
//   r_alpha = ( sin t, 0, cos t)     alpha = (cos t/2,  sin t/2)
//   r_beta  = (-sin t, 0, cos t)     beta  = (cos t/2, -sin t/2)
//   r_gamma = ( 0,     0, 1    )     gamma = |0>
//   r_delta = (-1,     0, 0    )     delta = (1, -1)/sqrt2
//   r_minus_delta = -r_delta         minus_delta = (1, 1)/sqrt2
struct CanonicalGeometry {
    double theta = 0.0;
    double p = 0.0;              // 1 / (1 + sin theta)
    double bisector_scale = 0.0; // C with r_gamma = C (r_alpha + r_beta)

    PureQubit alpha, beta, gamma, delta, minus_delta;
    BlochVector r_alpha, r_beta, r_gamma, r_delta, r_minus_delta;
};

inline CanonicalGeometry canonical_geometry(double theta) {
    constexpr double half_pi = 1.57079632679489661923;
    if (!(theta > 0.0) || !(theta < half_pi))
        throw OutOfDomain("theta must lie strictly between 0 and pi/2");

    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double h = 0.5 * theta;
    const double inv_sqrt2 = std::sqrt(0.5);

    CanonicalGeometry g;
    g.theta = theta;
    g.p = 1.0 / (1.0 + s);
    g.bisector_scale = 1.0 / (2.0 * c);

    g.alpha = PureQubit(cplx{std::cos(h)}, cplx{std::sin(h)});
    g.beta = PureQubit(cplx{std::cos(h)}, cplx{-std::sin(h)});
    g.gamma = PureQubit::ket0();
    g.delta = PureQubit(cplx{inv_sqrt2}, cplx{-inv_sqrt2});
    g.minus_delta = PureQubit(cplx{inv_sqrt2}, cplx{inv_sqrt2});

    g.r_alpha = {s, 0.0, c};
    g.r_beta = {-s, 0.0, c};
    g.r_gamma = {0.0, 0.0, 1.0};
    g.r_delta = {-1.0, 0.0, 0.0};
    g.r_minus_delta = {1.0, 0.0, 0.0};
    return g;
}

// Uniform direction on the unit sphere (2 draws).
inline BlochVector random_unit_bloch(RngStream& rng) {
    const double z = 1.0 - 2.0 * rng.uniform();
    const double phi = 2.0 * 3.14159265358979323846 * rng.uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

// Haar-uniform pure state (uniform Bloch direction).
inline PureQubit random_pure(RngStream& rng) { return pure_from_bloch(random_unit_bloch(rng)); }

} // namespace hnl
