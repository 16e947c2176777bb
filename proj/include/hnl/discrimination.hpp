#pragma once

#include <cmath>
#include <cstdint>

#include "hnl/bloch.hpp"
#include "hnl/errors.hpp"
#include "hnl/rng.hpp"

namespace hnl {

// Minimum error probability for equal-prior discrimination of two pure
// states with the given squared overlap.
inline double helstrom_bound(double ov) {
    if (!(ov >= 0.0) || !(ov <= 1.0))
        throw OutOfDomain("overlap must lie in [0, 1]");
    return 0.5 * (1.0 - std::sqrt(1.0 - ov));
}

inline double helstrom_bound(const CanonicalGeometry& g) {
    return helstrom_bound(overlap(g.alpha, g.beta));
}

// Two-outcome projective measurement along a unit axis. Outcome 0 is the
// projector (1 + axis.sigma)/2, outcome 1 its complement.
struct ProjectiveDetector {
    BlochVector axis;
};

inline void validate(const ProjectiveDetector& d) {
    if (std::abs(d.axis.norm() - 1.0) >= kAlgebraTol)
        throw InvalidDetector("projective axis is not a unit vector");
}

// Two-outcome POVM given by its outcome-0 effect; outcome 1 is 1 - e0.
struct TwoOutcomePovm {
    Mat2 e0;
};

inline void validate(const TwoOutcomePovm& d) {
    if (d.e0.hermiticity_defect() >= kAlgebraTol)
        throw InvalidDetector("effect is not hermitian");
    const auto ev = d.e0.hermitian_eigenvalues();
    // eigenvalues of 1 - e0 are 1 - ev, so one interval check covers both effects
    if (ev[0] < -kAlgebraTol || ev[1] > 1.0 + kAlgebraTol)
        throw InvalidDetector("effect eigenvalues must lie in [0, 1]");
}

inline double povm_outcome_probability(const TwoOutcomePovm& e, const DensityOperator& state) {
    validate(e);
    const double t = (e.e0 * state.matrix()).trace().real();
    if (t < -kAlgebraTol || t > 1.0 + kAlgebraTol)
        throw InvalidDetector("outcome probability fell outside [0, 1]");
    return std::min(1.0, std::max(0.0, t));
}

// P(outcome 0 | pure state with Bloch vector r) for a projective detector.
inline double projective_outcome0(const ProjectiveDetector& d, const BlochVector& r) {
    return 0.5 * (1.0 + d.axis.dot(r));
}

// Average error probability at priors 1/2: outcome 0 claims alpha, 1 claims beta.
inline double detector_error(const ProjectiveDetector& d, const CanonicalGeometry& g) {
    validate(d);
    return 0.5 * (1.0 - projective_outcome0(d, g.r_alpha)) +
           0.5 * projective_outcome0(d, g.r_beta);
}

inline double detector_error(const TwoOutcomePovm& e, const CanonicalGeometry& g) {
    const double p0_alpha = povm_outcome_probability(e, DensityOperator::from_pure(g.alpha));
    const double p0_beta = povm_outcome_probability(e, DensityOperator::from_pure(g.beta));
    return 0.5 * (1.0 - p0_alpha) + 0.5 * p0_beta;
}

// The error-minimizing measurement: project along the difference of the two
// Bloch vectors, which is +x in the canonical frame.
inline ProjectiveDetector optimal_detector(const CanonicalGeometry& g) {
    return {(g.r_alpha - g.r_beta).unit()};
}

// e0 = t P(n) + s P(-n) with t, s uniform on [0,1] and n uniform on the
// sphere. Ranges exactly over the two-outcome qubit POVMs (a 1 + b.sigma
// with 0 <= a +- |b| <= 1, via t = a + |b|, s = a - |b|). 4 draws.
inline TwoOutcomePovm random_two_outcome_povm(RngStream& rng) {
    const BlochVector n = random_unit_bloch(rng);
    const double t = rng.uniform();
    const double s = rng.uniform();
    const Mat2 sigma_n = n.x * pauli_x() + n.y * pauli_y() + n.z * pauli_z();
    Mat2 e0 = 0.5 * (t + s) * Mat2::identity() + 0.5 * (t - s) * sigma_n;
    return {e0};
}

struct OracleResult {
    double min_error = 0.0;       // minimum over every sampled detector
    BlochVector argmin_axis;      // axis of the best detector found
    double projective_min = 0.0;  // minimum over the projective grid alone
    double povm_min = 0.0;        // minimum over the random POVM samples alone
};

// Brute-force search over detectors: a uniform angular grid of projective
// axes in the plane of the two signal states, plus random two-outcome POVMs.
// Deterministic for a fixed seed.
inline OracleResult oracle_min_error(const CanonicalGeometry& g, long grid_points,
                                     long povm_samples, std::uint64_t seed) {
    if (grid_points < 1000)
        throw OutOfDomain("projective grid needs at least 1000 points");

    constexpr double two_pi = 6.28318530717958647692;
    OracleResult r;
    r.projective_min = 1.0;
    for (long k = 0; k < grid_points; ++k) {
        const double t = two_pi * static_cast<double>(k) / static_cast<double>(grid_points);
        const ProjectiveDetector d{{std::cos(t), 0.0, std::sin(t)}};
        const double err = detector_error(d, g);
        if (err < r.projective_min) {
            r.projective_min = err;
            r.argmin_axis = d.axis;
        }
    }
    r.min_error = r.projective_min;

    r.povm_min = 1.0;
    RngStream rng(seed);
    for (long k = 0; k < povm_samples; ++k) {
        const TwoOutcomePovm e = random_two_outcome_povm(rng);
        const double err = detector_error(e, g);
        if (err < r.povm_min) r.povm_min = err;
        if (err < r.min_error) {
            r.min_error = err;
            // report the sampled direction of the winning effect
            const BlochVector b{(e.e0 * pauli_x()).trace().real(),
                                (e.e0 * pauli_y()).trace().real(),
                                (e.e0 * pauli_z()).trace().real()};
            r.argmin_axis = b.norm() > 1e-12 ? b.unit() : BlochVector{1.0, 0.0, 0.0};
        }
    }
    return r;
}

enum class StateLabel { alpha, beta, delta, minus_delta };

// Hypothetical device that beats the minimum error probability on the two
// signal states by epsilon, with a freely configurable response q_other on
// delta and minus_delta.
struct SuperQuantumDetector {
    double epsilon = 0.0;
    double q_other = 0.5;
    CanonicalGeometry geometry;
};

inline SuperQuantumDetector make_super_quantum(double epsilon, double q_other,
                                               const CanonicalGeometry& g) {
    const double pe_min = helstrom_bound(g);
    if (!(epsilon > 0.0) || epsilon > pe_min + kAlgebraTol)
        throw InvalidDetector("epsilon must satisfy 0 < epsilon <= minimum error");
    if (!(q_other >= 0.0) || !(q_other <= 1.0))
        throw InvalidDetector("q_other must lie in [0, 1]");
    return {epsilon, q_other, g};
}

// Outcome-0 probability from the behavioral table.
inline double behavioral_response(const SuperQuantumDetector& d, StateLabel label) {
    const double pe = helstrom_bound(d.geometry) - d.epsilon;
    switch (label) {
        case StateLabel::alpha: return 1.0 - pe;
        case StateLabel::beta: return pe;
        case StateLabel::delta: return d.q_other;
        case StateLabel::minus_delta: return d.q_other;
    }
    throw UnknownLabel("state label is not one of alpha, beta, delta, minus_delta");
}

} // namespace hnl
