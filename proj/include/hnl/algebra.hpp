#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace hnl {

using cplx = std::complex<double>;

// 2x2 complex matrix, row-major storage. Just enough algebra for one qubit.
struct Mat2 {
    std::array<cplx, 4> a{};

    cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }
    const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }

    static Mat2 zero() { return {}; }

    static Mat2 identity() {
        Mat2 m;
        m.a = {cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}};
        return m;
    }

    Mat2 operator+(const Mat2& o) const {
        Mat2 r;
        for (std::size_t k = 0; k < 4; ++k) r.a[k] = a[k] + o.a[k];
        return r;
    }

    Mat2 operator-(const Mat2& o) const {
        Mat2 r;
        for (std::size_t k = 0; k < 4; ++k) r.a[k] = a[k] - o.a[k];
        return r;
    }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        r.a[0] = a[0] * o.a[0] + a[1] * o.a[2];
        r.a[1] = a[0] * o.a[1] + a[1] * o.a[3];
        r.a[2] = a[2] * o.a[0] + a[3] * o.a[2];
        r.a[3] = a[2] * o.a[1] + a[3] * o.a[3];
        return r;
    }

    friend Mat2 operator*(double s, const Mat2& m) {
        Mat2 r;
        for (std::size_t k = 0; k < 4; ++k) r.a[k] = s * m.a[k];
        return r;
    }

    Mat2 adjoint() const {
        Mat2 r;
        r.a[0] = std::conj(a[0]);
        r.a[1] = std::conj(a[2]);
        r.a[2] = std::conj(a[1]);
        r.a[3] = std::conj(a[3]);
        return r;
    }

    cplx trace() const { return a[0] + a[3]; }

    // max entrywise |m - m^dagger|
    double hermiticity_defect() const {
        const Mat2 d = *this - adjoint();
        double m = 0.0;
        for (const cplx& v : d.a) m = std::max(m, std::abs(v));
        return m;
    }

    double max_abs_diff(const Mat2& o) const {
        double m = 0.0;
        for (std::size_t k = 0; k < 4; ++k) m = std::max(m, std::abs(a[k] - o.a[k]));
        return m;
    }

    // Eigenvalues assuming hermiticity, ascending order.
    std::array<double, 2> hermitian_eigenvalues() const {
        const double d0 = a[0].real();
        const double d1 = a[3].real();
        const double mean = 0.5 * (d0 + d1);
        const double disc = std::hypot(0.5 * (d0 - d1), std::abs(a[1]));
        return {mean - disc, mean + disc};
    }
};

inline Mat2 pauli_x() {
    Mat2 m;
    m.a = {cplx{0.0}, cplx{1.0}, cplx{1.0}, cplx{0.0}};
    return m;
}

inline Mat2 pauli_y() {
    Mat2 m;
    m.a = {cplx{0.0}, cplx{0.0, -1.0}, cplx{0.0, 1.0}, cplx{0.0}};
    return m;
}

inline Mat2 pauli_z() {
    Mat2 m;
    m.a = {cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{-1.0}};
    return m;
}

} // namespace hnl
