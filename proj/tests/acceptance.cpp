// Acceptance suite: runs each criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "hnl/discrimination.hpp"
#include "hnl/protocol.hpp"
#include "hnl/steering.hpp"

using namespace hnl;

namespace {

constexpr double kPi = 3.14159265358979323846;

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::vector<double> theta_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 15; ++k) grid.push_back(0.1 * k);
    return grid;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. Closed form vs brute force: oracle minimum within 1e-6, nothing beats
//    the bound by more than 1e-12.
void criterion_bound_vs_oracle() {
    double worst_gap = 0.0, worst_violation = 0.0;
    bool pass = true;
    int k = 0;
    for (const double theta : theta_grid()) {
        const CanonicalGeometry g = canonical_geometry(theta);
        const OracleResult r = oracle_min_error(g, 10000, 10000, 1000 + static_cast<std::uint64_t>(k++));
        const double closed = 0.5 * (1.0 - std::sin(theta));
        worst_gap = std::max(worst_gap, std::abs(r.min_error - closed));
        worst_violation = std::max(worst_violation, closed - r.min_error);
        if (std::abs(r.min_error - closed) >= 1e-6) pass = false;
        if (closed - r.min_error > 1e-12) pass = false;
        if (std::abs(r.projective_min - closed) >= 1e-6) pass = false;
    }
    report(1, "bound closed form vs brute-force oracle", pass,
           "max |oracle - closed| = " + fmt(worst_gap) + ", max bound violation = " + fmt(worst_violation));
}

// 2. p (1 - P_E^m) = 1/2 across the grid.
void criterion_half_identity() {
    double worst = 0.0;
    for (const double theta : theta_grid()) {
        const CanonicalGeometry g = canonical_geometry(theta);
        worst = std::max(worst, std::abs(g.p * (1.0 - helstrom_bound(g)) - 0.5));
    }
    report(2, "p (1 - P_E^m) = 1/2", worst < 1e-12, "max deviation = " + fmt(worst));
}

// 3. Both two-element decompositions realize rho_B.
void criterion_decompositions() {
    double worst = 0.0;
    for (const double theta : theta_grid()) {
        const CanonicalGeometry g = canonical_geometry(theta);
        const DensityOperator rho = reduced_state_bob(build_psi(g));
        const Decomposition first{{{g.p, g.alpha, false}, {1.0 - g.p, g.delta, false}}};
        const Decomposition second{{{g.p, g.beta, false}, {1.0 - g.p, g.minus_delta, false}}};
        worst = std::max(worst, decomposition_residual(rho, first));
        worst = std::max(worst, decomposition_residual(rho, second));
    }
    report(3, "both decompositions realize rho_B", worst < 1e-12, "max residual = " + fmt(worst));
}

// 4. The primed basis is orthonormal and rebuilds the entangled state.
void criterion_primed_basis() {
    double worst_ortho = 0.0, worst_recon = 0.0;
    for (const double theta : theta_grid()) {
        const CanonicalGeometry g = canonical_geometry(theta);
        const OrthonormalBasis primed = primed_basis(g);
        worst_ortho = std::max(worst_ortho, std::abs(inner(primed.first, primed.second)));
        worst_recon = std::max(worst_recon, reconstruction_residual(g, primed));
    }
    report(4, "primed basis reconstructs the state", worst_ortho < 1e-10 && worst_recon < 1e-10,
           "orthonormality defect = " + fmt(worst_ortho) + ", reconstruction residual = " + fmt(worst_recon));
}

// 5. Physical detectors carry no signal: zero analytic gap for random
//    detectors, and the optimal-detector Monte Carlo shows none.
void criterion_no_signaling() {
    double worst = 0.0;
    RngStream rng(606);
    for (const double theta : theta_grid()) {
        const CanonicalGeometry g = canonical_geometry(theta);
        for (int k = 0; k < 100; ++k) {
            worst = std::max(worst, std::abs(analytic_marginals(
                                                 ProjectiveDetector{random_unit_bloch(rng)}, g)
                                                 .gap()));
            worst = std::max(worst, std::abs(analytic_marginals(random_two_outcome_povm(rng), g).gap()));
        }
    }

    ProtocolConfig config;
    config.theta = kPi / 6.0;
    config.detector = OptimalDetector{};
    config.rounds = 100000;
    config.seed = 505;
    const NoSignalReport mc = no_signal_test(config);
    const double mc_limit = 4.0 * std::sqrt(0.5 / static_cast<double>(config.rounds));

    const bool pass = worst < 1e-12 && std::abs(mc.gap) < mc_limit && mc.verdict == Verdict::no_signal;
    report(5, "exact no-signaling for physical detectors", pass,
           "max analytic gap = " + fmt(worst) + ", MC gap = " + fmt(std::abs(mc.gap)) + " < " + fmt(mc_limit));
}

// 6. The optimal detector sits exactly on the no-signaling boundary.
void criterion_boundary_saturation() {
    double worst = 0.0;
    for (const double theta : theta_grid()) {
        const CanonicalGeometry g = canonical_geometry(theta);
        const Marginals m = analytic_marginals(OptimalDetector{}, g);
        worst = std::max(worst, std::abs(m.p0_bit0 - 0.5));
        worst = std::max(worst, std::abs(m.p0_bit1 - 0.5));
    }
    report(6, "optimal detector marginal is exactly 1/2", worst < 1e-12, "max deviation = " + fmt(worst));
}

// 7. A detector below the bound gives a usable channel for every q_other.
void criterion_signaling_reductio() {
    const double theta = kPi / 6.0;
    const double eps = 0.05;
    const CanonicalGeometry g = canonical_geometry(theta);

    bool pass = true;
    std::ostringstream detail;
    for (const double q : {0.0, 0.5, 1.0}) {
        const SuperQuantumSpec spec{eps, q};
        const double margin = super_decision_margin(spec, g);
        if (std::abs(margin - (0.5 + g.p * eps)) >= 1e-12) pass = false;

        ProtocolConfig nosig_config{theta, spec, 100000, 1, 707};
        const NoSignalReport n = no_signal_test(nosig_config);
        if (n.verdict != Verdict::signal || std::abs(n.z_statistic) <= 20.0) pass = false;

        ProtocolConfig decode_config{theta, spec, 2000, 200, 808};
        const double err = estimate_bob_error(decode_config).bob_error;
        if (err > 0.05) pass = false;
        if (q == 0.5)
            detail << "margin = " << fmt(margin) << ", |z| = " << fmt(std::abs(n.z_statistic))
                   << ", bob error = " << fmt(err);
    }
    report(7, "super-quantum detector signals for q in {0, 0.5, 1}", pass, detail.str());
}

// 8. Randomized property suites at 1e-12.
void criterion_property_suites() {
    RngStream rng(909);
    double worst = 0.0;

    for (int k = 0; k < 1000; ++k) {
        const PureQubit q(cplx{rng.uniform() - 0.5, rng.uniform() - 0.5},
                          cplx{rng.uniform() - 0.5, rng.uniform() - 0.5});
        const PureQubit back = pure_from_bloch(bloch_from_pure(q));
        worst = std::max(worst, std::abs(back.a0() - q.a0()));
        worst = std::max(worst, std::abs(back.a1() - q.a1()));
    }

    for (int k = 0; k < 1000; ++k) {
        const PureQubit q1 = random_pure(rng), q2 = random_pure(rng);
        const double via_dot = 0.5 * (1.0 + bloch_from_pure(q1).dot(bloch_from_pure(q2)));
        worst = std::max(worst, std::abs(overlap(q1, q2) - via_dot));
    }

    for (int k = 0; k < 1000; ++k) {
        const int parts = 2 + static_cast<int>(rng.uniform() * 3.0);
        std::vector<std::pair<double, PureQubit>> mixture;
        double sum = 0.0;
        for (int i = 0; i < parts; ++i) {
            mixture.emplace_back(rng.uniform() + 1e-3, random_pure(rng));
            sum += mixture.back().first;
        }
        BlochVector weighted{0.0, 0.0, 0.0};
        for (auto& [prob, state] : mixture) {
            prob /= sum;
            weighted = weighted + prob * bloch_from_pure(state);
        }
        const BlochVector got = density_from_mixture(mixture).bloch();
        worst = std::max(worst, (got - weighted).norm());
    }

    const CanonicalGeometry g = canonical_geometry(kPi / 6.0);
    const BipartiteState psi = build_psi(g);
    const DensityOperator rho = reduced_state_bob(psi);
    for (int k = 0; k < 100; ++k) {
        const OrthonormalBasis basis = random_orthonormal_basis(rng);
        worst = std::max(worst, decomposition_residual(rho, steer(psi, basis)));
    }

    report(8, "randomized property suites", worst < 1e-12, "max deviation = " + fmt(worst));
}

} // namespace

int main() {
    criterion_bound_vs_oracle();
    criterion_half_identity();
    criterion_decompositions();
    criterion_primed_basis();
    criterion_no_signaling();
    criterion_boundary_saturation();
    criterion_signaling_reductio();
    criterion_property_suites();

    if (failures == 0) {
        std::printf("all 8 criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
