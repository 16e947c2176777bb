#pragma once

#include <cmath>
#include <cstdint>
#include <variant>

#include "hnl/discrimination.hpp"
#include "hnl/rng.hpp"
#include "hnl/steering.hpp"

namespace hnl {

// Resolved against the geometry at run time.
struct OptimalDetector {};

// Behavioral device parameters; the geometry is supplied by the config.
struct SuperQuantumSpec {
    double epsilon = 0.0;
    double q_other = 0.5;
};

using DetectorSpec = std::variant<OptimalDetector, ProjectiveDetector, TwoOutcomePovm, SuperQuantumSpec>;

struct ProtocolConfig {
    double theta = 0.0;
    DetectorSpec detector = OptimalDetector{};
    long rounds = 1;   // N, copies measured per session
    long sessions = 1; // M
    std::uint64_t seed = 0;
};

inline void validate(const ProtocolConfig& config) {
    if (config.rounds < 1) throw OutOfDomain("rounds must be at least 1");
    if (config.sessions < 1) throw OutOfDomain("sessions must be at least 1");
}

struct SessionRecord {
    int bit_sent = 0;
    long n0 = 0;
    long n1 = 0;
    int bob_guess = 0;
    bool tie_broken = false;
};

struct BobDecision {
    int guess = 0;
    bool tie_broken = false;
};

// bit 0 -> computational basis, bit 1 -> the primed basis.
inline OrthonormalBasis alice_basis_for_bit(int bit, const CanonicalGeometry& g) {
    return bit == 0 ? computational_basis() : primed_basis(g);
}

namespace detail {

inline StateLabel match_label(const PureQubit& state, const CanonicalGeometry& g) {
    if (overlap(state, g.alpha) > 1.0 - kInputTol) return StateLabel::alpha;
    if (overlap(state, g.beta) > 1.0 - kInputTol) return StateLabel::beta;
    if (overlap(state, g.delta) > 1.0 - kInputTol) return StateLabel::delta;
    if (overlap(state, g.minus_delta) > 1.0 - kInputTol) return StateLabel::minus_delta;
    throw UnknownLabel("steered state matches no canonical state");
}

// Outcome-0 probability of a detector on a collapsed state: Born rule for
// physical detectors, behavioral table for the super-quantum device.
inline double outcome0_probability(const DetectorSpec& detector, const PureQubit& state,
                                   const CanonicalGeometry& g) {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, OptimalDetector>) {
                return projective_outcome0(optimal_detector(g), bloch_from_pure(state));
            } else if constexpr (std::is_same_v<T, ProjectiveDetector>) {
                validate(d);
                return projective_outcome0(d, bloch_from_pure(state));
            } else if constexpr (std::is_same_v<T, TwoOutcomePovm>) {
                return povm_outcome_probability(d, DensityOperator::from_pure(state));
            } else {
                const SuperQuantumDetector dev = make_super_quantum(d.epsilon, d.q_other, g);
                return behavioral_response(dev, match_label(state, g));
            }
        },
        detector);
}

// Per-round sampling data for one bit value: Alice's basis choice collapses
// Bob's qubit to the signal state (weight p) or the companion state, and the
// detector responds to whichever arrived. Each sample consumes exactly two
// stream draws, keeping sessions reproducible round-for-round.
struct RoundSampler {
    double p_signal = 0.0;
    double p0_signal = 0.0;
    double p0_other = 0.0;

    int sample(RngStream& rng) const {
        const bool signal = rng.bernoulli(p_signal);
        const double p0 = signal ? p0_signal : p0_other;
        return rng.bernoulli(p0) ? 0 : 1;
    }
};

inline RoundSampler make_round_sampler(int bit, const CanonicalGeometry& g,
                                       const DetectorSpec& detector) {
    const Decomposition collapsed = steer(build_psi(g), alice_basis_for_bit(bit, g));
    RoundSampler s;
    s.p_signal = collapsed.parts[0].prob;
    s.p0_signal = outcome0_probability(detector, collapsed.parts[0].state, g);
    s.p0_other = outcome0_probability(detector, collapsed.parts[1].state, g);
    return s;
}

} // namespace detail

inline int run_round(int bit, const CanonicalGeometry& g, const DetectorSpec& detector,
                     RngStream& rng) {
    return detail::make_round_sampler(bit, g, detector).sample(rng);
}

// Majority vote on outcome 0; an exact tie is broken by a fair draw.
inline BobDecision bob_decide(long n0, long rounds, RngStream& rng) {
    if (n0 > rounds) throw OutOfDomain("outcome count exceeds round count");
    if (2 * n0 > rounds) return {0, false};
    if (2 * n0 < rounds) return {1, false};
    return {rng.bernoulli(0.5) ? 0 : 1, true};
}

// One N-round session on the substream seed(master, session_index, bit).
inline SessionRecord run_session(const ProtocolConfig& config, int bit,
                                 std::uint64_t session_index = 0) {
    validate(config);
    const CanonicalGeometry g = canonical_geometry(config.theta);
    const detail::RoundSampler sampler = detail::make_round_sampler(bit, g, config.detector);

    RngStream rng(substream_seed(config.seed, session_index, static_cast<std::uint64_t>(bit)));
    SessionRecord rec;
    rec.bit_sent = bit;
    for (long k = 0; k < config.rounds; ++k) {
        if (sampler.sample(rng) == 0) ++rec.n0; else ++rec.n1;
    }
    const BobDecision d = bob_decide(rec.n0, config.rounds, rng);
    rec.bob_guess = d.guess;
    rec.tie_broken = d.tie_broken;
    return rec;
}

struct SimulationSummary {
    double bob_error = 0.0; // fraction of sessions Bob decoded wrongly
    long wrong_guesses = 0;
    long tie_count = 0;
    double freq0_bit0 = 0.0; // outcome-0 frequency over all bit-0 sessions
    double freq0_bit1 = 0.0;
};

// M sessions with bits alternating 0, 1, 0, ...
inline SimulationSummary estimate_bob_error(const ProtocolConfig& config) {
    validate(config);
    SimulationSummary sum;
    long n0_by_bit[2] = {0, 0};
    long sessions_by_bit[2] = {0, 0};
    for (long i = 0; i < config.sessions; ++i) {
        const int bit = static_cast<int>(i % 2);
        const SessionRecord rec = run_session(config, bit, static_cast<std::uint64_t>(i));
        if (rec.bob_guess != bit) ++sum.wrong_guesses;
        if (rec.tie_broken) ++sum.tie_count;
        n0_by_bit[bit] += rec.n0;
        ++sessions_by_bit[bit];
    }
    sum.bob_error = static_cast<double>(sum.wrong_guesses) / static_cast<double>(config.sessions);
    for (int bit = 0; bit < 2; ++bit) {
        const double total = static_cast<double>(sessions_by_bit[bit]) * static_cast<double>(config.rounds);
        const double freq = total > 0.0 ? static_cast<double>(n0_by_bit[bit]) / total : 0.0;
        (bit == 0 ? sum.freq0_bit0 : sum.freq0_bit1) = freq;
    }
    return sum;
}

struct Marginals {
    double p0_bit0 = 0.0;
    double p0_bit1 = 0.0;
    double gap() const { return p0_bit0 - p0_bit1; }
};

// Exact outcome-0 probability per bit value, evaluated through the two
// decompositions of Bob's state. For any physical detector both routes give
// trace(E0 rho_B), so the gap vanishes; the behavioral device has
//   p0_bit0 = p (1 - pe_min + eps) + (1 - p) q_other
//   p0_bit1 = p (pe_min - eps)     + (1 - p) q_other
inline Marginals analytic_marginals(const DetectorSpec& detector, const CanonicalGeometry& g) {
    auto p0 = [&](const PureQubit& state) {
        return detail::outcome0_probability(detector, state, g);
    };
    return {g.p * p0(g.alpha) + (1.0 - g.p) * p0(g.delta),
            g.p * p0(g.beta) + (1.0 - g.p) * p0(g.minus_delta)};
}

// Guaranteed correct-outcome probability contributed by the signal state
// alone: p (1 - pe_min + eps) = 1/2 + p eps, independent of q_other. Bob's
// majority vote at threshold 1/2 therefore decodes with per-session error
// at most exp(-2 N (p eps)^2) whatever the device does on delta.
inline double super_decision_margin(const SuperQuantumSpec& d, const CanonicalGeometry& g) {
    const SuperQuantumDetector dev = make_super_quantum(d.epsilon, d.q_other, g);
    return g.p * behavioral_response(dev, StateLabel::alpha);
}

enum class Verdict { no_signal, signal };

struct NoSignalReport {
    double freq0_bit0 = 0.0;
    double freq0_bit1 = 0.0;
    double gap = 0.0;
    double z_statistic = 0.0;
    Verdict verdict = Verdict::no_signal;
};

// One N-round batch per bit value; two-proportion z statistic on the
// outcome-0 frequencies with pooled variance.
inline NoSignalReport no_signal_test(const ProtocolConfig& config, double z_threshold = 5.0) {
    validate(config);
    if (config.rounds < 100)
        throw InsufficientData("no-signal test needs at least 100 rounds per bit");

    const CanonicalGeometry g = canonical_geometry(config.theta);
    long n0[2] = {0, 0};
    for (int bit = 0; bit < 2; ++bit) {
        const detail::RoundSampler sampler = detail::make_round_sampler(bit, g, config.detector);
        RngStream rng(substream_seed(config.seed, 0, static_cast<std::uint64_t>(bit)));
        for (long k = 0; k < config.rounds; ++k)
            if (sampler.sample(rng) == 0) ++n0[bit];
    }

    const double rounds = static_cast<double>(config.rounds);
    NoSignalReport rep;
    rep.freq0_bit0 = static_cast<double>(n0[0]) / rounds;
    rep.freq0_bit1 = static_cast<double>(n0[1]) / rounds;
    rep.gap = rep.freq0_bit0 - rep.freq0_bit1;
    const double pooled = static_cast<double>(n0[0] + n0[1]) / (2.0 * rounds);
    const double var = pooled * (1.0 - pooled) * 2.0 / rounds;
    rep.z_statistic = var > 0.0 ? rep.gap / std::sqrt(var) : 0.0;
    rep.verdict = std::abs(rep.z_statistic) > z_threshold ? Verdict::signal : Verdict::no_signal;
    return rep;
}

} // namespace hnl
