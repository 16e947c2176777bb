#pragma once

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hnl/discrimination.hpp"
#include "hnl/protocol.hpp"
#include "hnl/report.hpp"
#include "hnl/steering.hpp"

namespace hnl::cli {

// Flag-level problems: reported with the synopsis, exit code 1. Errors from
// the computation itself exit with code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kSynopsis =
    "usage: hnl <subcommand> [options]\n"
    "  bound     (--theta T | --overlap V)                     minimum error probability\n"
    "  steer     (--theta T | --overlap V)                      entangled state and both decompositions\n"
    "  oracle    (--theta T | --overlap V) [--grid N] [--povms N] [--seed S]\n"
    "  simulate  (--theta T | --overlap V) [--detector D] [--rounds N] [--sessions M] [--seed S]\n"
    "  nosig     (--theta T | --overlap V) [--detector D] [--rounds N] [--seed S] [--z-threshold Z]\n"
    "  sweep     --theta-range A:B:STEP [--eps-range A:B:STEP] [--detector D] [--q Q] [--rounds N] [--seed S]\n"
    "common: --format {text|json|csv}, --output PATH; HNL_SEED supplies the default seed\n"
    "detector grammar: optimal | projective:x,y,z | super:EPSILON[,Q]\n";

inline constexpr double kHalfPi = 1.57079632679489661923;

inline report::Format parse_format(const std::string& s) {
    if (s == "text") return report::Format::text;
    if (s == "json") return report::Format::json;
    if (s == "csv") return report::Format::csv;
    throw UsageError("unknown format '" + s + "' (expected text, json, or csv)");
}

struct AngleArg {
    double theta = 0.0;
    double ov = 0.0;
};

// --theta and --overlap are aliases for the same parameter; exactly one must
// be given. strict restricts to the open interval where the geometry exists.
inline AngleArg resolve_angle(bool has_theta, double theta, bool has_ov, double ov, bool strict) {
    if (has_theta && has_ov) throw UsageError("--theta and --overlap are mutually exclusive");
    if (!has_theta && !has_ov) throw UsageError("one of --theta or --overlap is required");
    if (has_ov) {
        if (strict ? !(ov > 0.0 && ov < 1.0) : !(ov >= 0.0 && ov <= 1.0))
            throw UsageError(strict ? "--overlap must lie strictly between 0 and 1"
                                    : "--overlap must lie in [0, 1]");
        theta = std::acos(std::sqrt(ov));
        return {theta, ov};
    }
    if (strict ? !(theta > 0.0 && theta < kHalfPi) : !(theta >= 0.0 && theta <= kHalfPi))
        throw UsageError(strict ? "--theta must lie strictly between 0 and pi/2"
                                : "--theta must lie in [0, pi/2]");
    const double c = std::cos(theta);
    return {theta, c * c};
}

struct DetectorArg {
    DetectorSpec spec = OptimalDetector{};
    std::string kind = "optimal";
    std::string echo = "optimal"; // canonical comma-free form for reports
};

inline std::vector<double> parse_numbers(const std::string& s, const std::string& what) {
    std::vector<double> vals;
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t pos = 0;
            vals.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("cannot parse number '" + item + "' in " + what);
        }
    }
    return vals;
}

inline DetectorArg parse_detector(const std::string& s) {
    DetectorArg d;
    const std::size_t colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);

    if (kind == "optimal") {
        if (!rest.empty()) throw UsageError("detector 'optimal' takes no parameters");
        return d;
    }
    if (kind == "projective") {
        const auto v = parse_numbers(rest, "projective axis");
        if (v.size() != 3) throw UsageError("projective detector needs an axis x,y,z");
        BlochVector axis{v[0], v[1], v[2]};
        if (axis.norm() < 1e-12) throw UsageError("projective axis must be nonzero");
        axis = axis.unit();
        d.spec = ProjectiveDetector{axis};
        d.kind = "projective";
        d.echo = "projective:" + report::num(axis.x) + ";" + report::num(axis.y) + ";" +
                 report::num(axis.z);
        return d;
    }
    if (kind == "super") {
        const auto v = parse_numbers(rest, "super detector parameters");
        if (v.empty() || v.size() > 2) throw UsageError("super detector needs EPSILON[,Q]");
        const double eps = v[0];
        const double q = v.size() == 2 ? v[1] : 0.5;
        if (!(eps > 0.0)) throw UsageError("super detector epsilon must be positive");
        if (!(q >= 0.0 && q <= 1.0)) throw UsageError("super detector q must lie in [0, 1]");
        d.spec = SuperQuantumSpec{eps, q};
        d.kind = "super";
        d.echo = "super:" + report::num(eps) + ";" + report::num(q);
        return d;
    }
    throw UsageError("unknown detector '" + s + "' (expected optimal, projective:x,y,z, or super:EPSILON[,Q])");
}

struct RangeArg {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

inline RangeArg parse_range(const std::string& s, const std::string& what) {
    std::vector<std::string> parts;
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError(what + " must have the form A:B:STEP");
    RangeArg r;
    try {
        r.lo = std::stod(parts[0]);
        r.hi = std::stod(parts[1]);
        r.step = std::stod(parts[2]);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + s + "'");
    }
    if (!(r.step > 0.0)) throw UsageError(what + " step must be positive");
    return r;
}

inline std::vector<double> expand_range(const RangeArg& r) {
    std::vector<double> vals;
    // half-step slack so the endpoint survives rounding
    for (double v = r.lo; v <= r.hi + 0.5 * r.step * 1e-9; v += r.step) vals.push_back(v);
    return vals;
}

inline std::uint64_t default_seed() {
    const char* env = std::getenv("HNL_SEED");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const std::uint64_t v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') throw UsageError("HNL_SEED is not an unsigned integer");
    return v;
}

// ---- subcommand implementations ----

inline std::string cmd_bound(const AngleArg& a, report::Format fmt) {
    report::BoundReport r;
    r.theta = a.theta;
    r.overlap = a.ov;
    r.pe_min = helstrom_bound(a.ov);
    r.p = 1.0 / (1.0 + std::sin(a.theta));
    // +x in the canonical frame; degenerate endpoints keep the convention
    r.optimal_axis = (a.theta > 0.0 && a.theta < kHalfPi)
                         ? optimal_detector(canonical_geometry(a.theta)).axis
                         : BlochVector{1.0, 0.0, 0.0};
    return report::render(r, fmt);
}

inline std::string cmd_steer(const AngleArg& a, report::Format fmt) {
    const CanonicalGeometry g = canonical_geometry(a.theta);
    const BipartiteState psi = build_psi(g);
    const DensityOperator rho = reduced_state_bob(psi);
    const OrthonormalBasis primed = primed_basis(g);

    report::SteerReport r;
    r.theta = a.theta;
    r.p = g.p;
    r.psi = psi;
    r.rho_bloch = rho.bloch();
    r.computational = steer(psi, computational_basis());
    r.primed = steer(psi, primed);
    r.primed_alice_basis = primed;
    r.orthonormality_defect = std::abs(inner(primed.first, primed.second));
    r.reconstruction_residual = reconstruction_residual(g, primed);
    r.residual_computational = decomposition_residual(rho, r.computational);
    r.residual_primed = decomposition_residual(rho, r.primed);
    return report::render(r, fmt);
}

inline std::string cmd_oracle(const AngleArg& a, long grid, long povms, std::uint64_t seed,
                              report::Format fmt) {
    if (grid < 1000) throw UsageError("--grid must be at least 1000");
    if (povms < 0) throw UsageError("--povms must be nonnegative");
    const CanonicalGeometry g = canonical_geometry(a.theta);
    const OracleResult res = oracle_min_error(g, grid, povms, seed);

    report::OracleReport r;
    r.theta = a.theta;
    r.bound = helstrom_bound(a.ov);
    r.grid_points = grid;
    r.povm_samples = povms;
    r.seed = seed;
    r.min_error = res.min_error;
    r.projective_min = res.projective_min;
    r.povm_min = res.povm_min;
    r.argmin_axis = res.argmin_axis;
    return report::render(r, fmt);
}

inline std::string cmd_simulate(const AngleArg& a, const DetectorArg& det, long rounds,
                                long sessions, std::uint64_t seed, report::Format fmt) {
    if (rounds < 1) throw UsageError("--rounds must be at least 1");
    if (sessions < 1) throw UsageError("--sessions must be at least 1");
    const ProtocolConfig config{a.theta, det.spec, rounds, sessions, seed};
    const SimulationSummary sum = estimate_bob_error(config);

    report::SimulateReport r;
    r.theta = a.theta;
    r.detector = det.echo;
    r.rounds = rounds;
    r.sessions = sessions;
    r.seed = seed;
    r.bob_error = sum.bob_error;
    r.wrong_guesses = sum.wrong_guesses;
    r.tie_count = sum.tie_count;
    r.freq0_bit0 = sum.freq0_bit0;
    r.freq0_bit1 = sum.freq0_bit1;
    return report::render(r, fmt);
}

inline std::string cmd_nosig(const AngleArg& a, const DetectorArg& det, long rounds,
                             std::uint64_t seed, double z_threshold, report::Format fmt) {
    if (rounds < 1) throw UsageError("--rounds must be at least 1");
    const ProtocolConfig config{a.theta, det.spec, rounds, 1, seed};
    const NoSignalReport rep = no_signal_test(config, z_threshold);

    report::NosigReport r;
    r.theta = a.theta;
    r.detector = det.echo;
    r.rounds = rounds;
    r.seed = seed;
    r.z_threshold = z_threshold;
    r.freq0_bit0 = rep.freq0_bit0;
    r.freq0_bit1 = rep.freq0_bit1;
    r.gap = rep.gap;
    r.z_statistic = rep.z_statistic;
    r.verdict = report::verdict_name(rep.verdict);
    return report::render(r, fmt);
}

inline std::string cmd_sweep(const RangeArg& theta_range, const std::optional<RangeArg>& eps_range,
                             const DetectorArg& det, double q, long rounds, std::uint64_t seed,
                             double z_threshold, report::Format fmt) {
    if (rounds < 100) throw UsageError("--rounds must be at least 100");
    if (!(q >= 0.0 && q <= 1.0)) throw UsageError("--q must lie in [0, 1]");
    if (!(theta_range.lo > 0.0) || !(theta_range.hi < kHalfPi))
        throw UsageError("--theta-range must lie strictly inside (0, pi/2)");
    if (eps_range && !(eps_range->lo > 0.0))
        throw UsageError("--eps-range values must be positive");

    report::SweepReport rep;
    for (const double theta : expand_range(theta_range)) {
        const double c = std::cos(theta);
        const double pe_min = helstrom_bound(c * c);

        std::vector<std::pair<DetectorSpec, double>> cells; // detector, epsilon column
        std::string kind = det.kind;
        if (eps_range) {
            kind = "super";
            for (const double eps : expand_range(*eps_range)) {
                if (eps > pe_min + kAlgebraTol) continue; // device undefined past the bound
                cells.emplace_back(SuperQuantumSpec{eps, q}, eps);
            }
        } else {
            double eps_col = 0.0;
            if (const auto* s = std::get_if<SuperQuantumSpec>(&det.spec)) eps_col = s->epsilon;
            cells.emplace_back(det.spec, eps_col);
        }

        for (const auto& [spec, eps] : cells) {
            const ProtocolConfig config{theta, spec, rounds, 1, seed};
            const NoSignalReport n = no_signal_test(config, z_threshold);
            report::SweepRow row;
            row.theta = theta;
            row.overlap = c * c;
            row.pe_min = pe_min;
            row.p = 1.0 / (1.0 + std::sin(theta));
            row.detector = kind;
            row.epsilon = eps;
            row.gap = n.gap;
            row.z = n.z_statistic;
            row.verdict = report::verdict_name(n.verdict);
            rep.rows.push_back(row);
        }
    }
    if (rep.rows.empty()) throw UsageError("sweep range is empty");
    return report::render(rep, fmt);
}

// Parses flags, validates domains, runs the requested operation, and writes
// the report. Exit codes: 0 success, 1 usage error, 2 numerical or domain
// error. Verdicts are report content, never exit codes.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Helstrom-bound and no-signaling laboratory"};
    app.name("hnl");
    app.require_subcommand(1);

    struct SubArgs {
        double theta = 0.0, ov = 0.0;
        std::string detector = "optimal";
        std::string format;
        std::string output;
        std::string theta_range, eps_range;
        long grid = 10000, povms = 10000;
        long rounds = 0, sessions = 100;
        std::uint64_t seed = 0;
        bool seed_given = false;
        double q = 0.5, z_threshold = 5.0;
    };
    SubArgs sa;

    auto add_common = [&sa](CLI::App* sub, const char* default_format) {
        sub->add_option("--format", sa.format, std::string("output format (default ") + default_format + ")");
        sub->add_option("--output", sa.output, "write the report to this path instead of stdout");
    };
    auto add_angle = [&sa](CLI::App* sub) {
        sub->add_option("--theta", sa.theta, "angle between the Bloch vectors, divided by 2 (radians)");
        sub->add_option("--overlap", sa.ov, "squared inner product of the two states");
    };
    auto add_seed = [&sa](CLI::App* sub) {
        sub->add_option("--seed", sa.seed, "64-bit RNG seed (default: HNL_SEED or 0)")
            ->each([&sa](const std::string&) { sa.seed_given = true; });
    };

    CLI::App* bound = app.add_subcommand("bound", "minimum error probability and the optimal detector");
    add_angle(bound);
    add_common(bound, "text");

    CLI::App* steer_cmd = app.add_subcommand("steer", "entangled state, reduced state, both decompositions");
    add_angle(steer_cmd);
    add_common(steer_cmd, "text");

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force detector search against the closed form");
    add_angle(oracle);
    oracle->add_option("--grid", sa.grid, "projective axes on the in-plane grid (default 10000)");
    oracle->add_option("--povms", sa.povms, "random two-outcome POVM samples (default 10000)");
    add_seed(oracle);
    add_common(oracle, "json");

    CLI::App* simulate = app.add_subcommand("simulate", "session protocol; Bob decodes by majority");
    add_angle(simulate);
    simulate->add_option("--detector", sa.detector, "optimal | projective:x,y,z | super:EPSILON[,Q]");
    simulate->add_option("--rounds", sa.rounds, "copies per session (default 1000)");
    simulate->add_option("--sessions", sa.sessions, "number of sessions (default 100)");
    add_seed(simulate);
    add_common(simulate, "json");

    CLI::App* nosig = app.add_subcommand("nosig", "two-proportion test of the outcome frequencies per bit");
    add_angle(nosig);
    nosig->add_option("--detector", sa.detector, "optimal | projective:x,y,z | super:EPSILON[,Q]");
    nosig->add_option("--rounds", sa.rounds, "rounds per bit value (default 100000)");
    nosig->add_option("--z-threshold", sa.z_threshold, "|z| above this reads as a signal (default 5)");
    add_seed(nosig);
    add_common(nosig, "json");

    CLI::App* sweep = app.add_subcommand("sweep", "scan theta (and epsilon) ranges, one row per cell");
    sweep->add_option("--theta-range", sa.theta_range, "A:B:STEP in radians")->required();
    sweep->add_option("--eps-range", sa.eps_range, "A:B:STEP for the super-quantum detector");
    sweep->add_option("--detector", sa.detector, "detector when no --eps-range is given");
    sweep->add_option("--q", sa.q, "off-design response of the super-quantum detector (default 0.5)");
    sweep->add_option("--rounds", sa.rounds, "rounds per bit and cell (default 10000)");
    sweep->add_option("--z-threshold", sa.z_threshold, "verdict threshold (default 5)");
    add_seed(sweep);
    add_common(sweep, "csv");

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("hnl");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << kSynopsis;
        return 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();

        report::Format fmt = report::Format::text;
        if (!sa.format.empty()) fmt = parse_format(sa.format);
        else if (name == "oracle" || name == "simulate" || name == "nosig") fmt = report::Format::json;
        else if (name == "sweep") fmt = report::Format::csv;

        if (!sa.seed_given) sa.seed = default_seed();

        auto given = [sub](const std::string& flag) {
            const CLI::Option* opt = sub->get_option_no_throw(flag);
            return opt != nullptr && opt->count() > 0;
        };
        const bool has_theta = given("--theta");
        const bool has_ov = given("--overlap");

        std::string content;
        if (name == "bound") {
            content = cmd_bound(resolve_angle(has_theta, sa.theta, has_ov, sa.ov, false), fmt);
        } else if (name == "steer") {
            content = cmd_steer(resolve_angle(has_theta, sa.theta, has_ov, sa.ov, true), fmt);
        } else if (name == "oracle") {
            content = cmd_oracle(resolve_angle(has_theta, sa.theta, has_ov, sa.ov, true), sa.grid,
                                 sa.povms, sa.seed, fmt);
        } else if (name == "simulate") {
            if (!given("--rounds")) sa.rounds = 1000;
            content = cmd_simulate(resolve_angle(has_theta, sa.theta, has_ov, sa.ov, true),
                                   parse_detector(sa.detector), sa.rounds, sa.sessions, sa.seed, fmt);
        } else if (name == "nosig") {
            if (!given("--rounds")) sa.rounds = 100000;
            content = cmd_nosig(resolve_angle(has_theta, sa.theta, has_ov, sa.ov, true),
                                parse_detector(sa.detector), sa.rounds, sa.seed, sa.z_threshold, fmt);
        } else { // sweep
            if (!given("--rounds")) sa.rounds = 10000;
            std::optional<RangeArg> eps;
            if (sweep->count("--eps-range") > 0) eps = parse_range(sa.eps_range, "--eps-range");
            content = cmd_sweep(parse_range(sa.theta_range, "--theta-range"), eps,
                                parse_detector(sa.detector), sa.q, sa.rounds, sa.seed,
                                sa.z_threshold, fmt);
        }
        report::write_output(content, sa.output, out);
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << kSynopsis;
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                              std::ostream& err) {
    return run(args, out, err);
}

} // namespace hnl::cli
