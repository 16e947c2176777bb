#pragma once

#include <cmath>
#include <vector>

#include "hnl/bloch.hpp"
#include "hnl/errors.hpp"

namespace hnl {

// Two-qubit pure state, amplitudes indexed Alice (x) Bob.
struct BipartiteState {
    cplx c00, c01, c10, c11;
};

inline BipartiteState bipartite_from_amplitudes(cplx c00, cplx c01, cplx c10, cplx c11) {
    const double n2 = std::norm(c00) + std::norm(c01) + std::norm(c10) + std::norm(c11);
    if (n2 <= 1e-24) throw ZeroVector("bipartite amplitudes are all zero");
    const double inv = 1.0 / std::sqrt(n2);
    return {c00 * inv, c01 * inv, c10 * inv, c11 * inv};
}

struct OrthonormalBasis {
    PureQubit first, second;
};

inline OrthonormalBasis orthonormal_basis(const PureQubit& first, const PureQubit& second) {
    if (std::abs(inner(first, second)) >= kAlgebraTol)
        throw InvalidState("basis states are not orthogonal");
    return {first, second};
}

inline OrthonormalBasis computational_basis() {
    return {PureQubit::ket0(), PureQubit::ket1()};
}

// Orthogonal complement of q up to phase: (-conj(a1), conj(a0)).
inline PureQubit orthogonal_state(const PureQubit& q) {
    return {-std::conj(q.a1()), std::conj(q.a0())};
}

inline OrthonormalBasis random_orthonormal_basis(RngStream& rng) {
    const PureQubit first = random_pure(rng);
    return {first, orthogonal_state(first)};
}

// Convex decomposition of a density operator into pure states. A branch of
// numerically zero weight is kept with prob 0 and flagged degenerate.
struct Decomposition {
    struct Part {
        double prob = 0.0;
        PureQubit state;
        bool degenerate = false;
    };
    std::vector<Part> parts;
};

inline Decomposition make_decomposition(std::vector<Decomposition::Part> parts) {
    double sum = 0.0;
    for (const auto& part : parts) {
        if (part.prob < -kAlgebraTol) throw BadDistribution("branch probability is negative");
        sum += part.prob;
    }
    if (std::abs(sum - 1.0) >= kAlgebraTol)
        throw BadDistribution("branch probabilities do not sum to 1");
    return {std::move(parts)};
}

// sqrt(p) |0>|alpha> + sqrt(1-p) |1>|delta>
inline BipartiteState build_psi(const CanonicalGeometry& g) {
    const double sp = std::sqrt(g.p);
    const double sq = std::sqrt(1.0 - g.p);
    return {sp * g.alpha.a0(), sp * g.alpha.a1(), sq * g.delta.a0(), sq * g.delta.a1()};
}

// Partial trace over Alice.
inline DensityOperator reduced_state_bob(const BipartiteState& psi) {
    Mat2 m;
    m(0, 0) = psi.c00 * std::conj(psi.c00) + psi.c10 * std::conj(psi.c10);
    m(0, 1) = psi.c00 * std::conj(psi.c01) + psi.c10 * std::conj(psi.c11);
    m(1, 0) = psi.c01 * std::conj(psi.c00) + psi.c11 * std::conj(psi.c10);
    m(1, 1) = psi.c01 * std::conj(psi.c01) + psi.c11 * std::conj(psi.c11);
    return DensityOperator::from_matrix(m);
}

// Alice measures in the given basis; each branch is the (normalized)
// Bob-side vector <basis_i|psi> with probability its squared norm.
inline Decomposition steer(const BipartiteState& psi, const OrthonormalBasis& basis) {
    auto branch = [&psi](const PureQubit& b) -> Decomposition::Part {
        const cplx v0 = std::conj(b.a0()) * psi.c00 + std::conj(b.a1()) * psi.c10;
        const cplx v1 = std::conj(b.a0()) * psi.c01 + std::conj(b.a1()) * psi.c11;
        const double w = std::norm(v0) + std::norm(v1);
        if (w < 1e-24) return {0.0, PureQubit::ket0(), true};
        return {w, PureQubit(v0, v1), false};
    };
    return make_decomposition({branch(basis.first), branch(basis.second)});
}

// Max-abs entrywise difference between rho and sum_i p_i |psi_i><psi_i|.
inline double decomposition_residual(const DensityOperator& rho, const Decomposition& d) {
    Mat2 m = Mat2::zero();
    for (const auto& part : d.parts) {
        if (part.degenerate) continue;
        m = m + part.prob * outer(part.state);
    }
    return rho.matrix().max_abs_diff(m);
}

// The Alice basis that rewrites psi as sqrt(p) |0'>|beta> + sqrt(1-p) |1'>|-delta>.
// Each Alice row of psi is solved against the (independent) pair {beta,
// minus_delta}; the recovered coefficients are the primed basis amplitudes
// scaled by sqrt(p) and sqrt(1-p).
inline OrthonormalBasis primed_basis(const CanonicalGeometry& g) {
    const cplx b0 = g.beta.a0(), b1 = g.beta.a1();
    const cplx d0 = g.minus_delta.a0(), d1 = g.minus_delta.a1();
    const cplx det = b0 * d1 - d0 * b1;
    if (std::abs(det) < kInputTol)
        throw SingularSystem("beta and minus_delta are numerically dependent");

    const BipartiteState psi = build_psi(g);
    auto solve = [&](cplx r0, cplx r1) {
        return std::pair<cplx, cplx>{(r0 * d1 - d0 * r1) / det, (b0 * r1 - r0 * b1) / det};
    };
    const auto [beta_row0, del_row0] = solve(psi.c00, psi.c01);
    const auto [beta_row1, del_row1] = solve(psi.c10, psi.c11);

    return orthonormal_basis(PureQubit(beta_row0, beta_row1), PureQubit(del_row0, del_row1));
}

// Max-amplitude residual of sqrt(p)|first>|beta> + sqrt(1-p)|second>|-delta>
// against psi.
inline double reconstruction_residual(const CanonicalGeometry& g, const OrthonormalBasis& primed) {
    const BipartiteState psi = build_psi(g);
    const double sp = std::sqrt(g.p);
    const double sq = std::sqrt(1.0 - g.p);
    const cplx r00 = sp * primed.first.a0() * g.beta.a0() + sq * primed.second.a0() * g.minus_delta.a0();
    const cplx r01 = sp * primed.first.a0() * g.beta.a1() + sq * primed.second.a0() * g.minus_delta.a1();
    const cplx r10 = sp * primed.first.a1() * g.beta.a0() + sq * primed.second.a1() * g.minus_delta.a0();
    const cplx r11 = sp * primed.first.a1() * g.beta.a1() + sq * primed.second.a1() * g.minus_delta.a1();
    double m = std::abs(r00 - psi.c00);
    m = std::max(m, std::abs(r01 - psi.c01));
    m = std::max(m, std::abs(r10 - psi.c10));
    m = std::max(m, std::abs(r11 - psi.c11));
    return m;
}

} // namespace hnl
