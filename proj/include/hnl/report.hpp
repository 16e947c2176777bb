#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hnl/bloch.hpp"
#include "hnl/errors.hpp"
#include "hnl/protocol.hpp"
#include "hnl/steering.hpp"

namespace hnl::report {

// Machine formats carry full precision: 17 significant digits round-trip
// any double exactly.
inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string num(long v) { return std::to_string(v); }
inline std::string num(std::uint64_t v) { return std::to_string(v); }

// Display precision for the text format.
inline std::string disp(double v) {
    if (v == 0.0) v = 0.0; // fold -0 for display
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

inline std::string json_array(const BlochVector& v) {
    return "[" + num(v.x) + ", " + num(v.y) + ", " + num(v.z) + "]";
}

inline std::string json_array(cplx c) { return "[" + num(c.real()) + ", " + num(c.imag()) + "]"; }

inline std::string json_array(const PureQubit& q) {
    return "[" + json_array(q.a0()) + ", " + json_array(q.a1()) + "]";
}

inline std::string json_array(const Decomposition& d) {
    std::string out = "[";
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
        const auto& part = d.parts[i];
        if (i) out += ", ";
        out += "{\"prob\": " + num(part.prob) + ", \"state\": " + json_array(part.state) +
               ", \"degenerate\": " + (part.degenerate ? "true" : "false") + "}";
    }
    return out + "]";
}

inline const char* verdict_name(Verdict v) {
    return v == Verdict::signal ? "signal" : "no_signal";
}

enum class Format { text, json, csv };

struct BoundReport {
    double theta = 0.0;
    double overlap = 0.0;
    double pe_min = 0.0;
    double p = 0.0;
    BlochVector optimal_axis;
};

struct SteerReport {
    double theta = 0.0;
    double p = 0.0;
    BipartiteState psi{};
    BlochVector rho_bloch;
    Decomposition computational, primed;
    OrthonormalBasis primed_alice_basis;
    double orthonormality_defect = 0.0;
    double reconstruction_residual = 0.0;
    double residual_computational = 0.0;
    double residual_primed = 0.0;
};

struct OracleReport {
    double theta = 0.0;
    double bound = 0.0;
    long grid_points = 0;
    long povm_samples = 0;
    std::uint64_t seed = 0;
    double min_error = 0.0;
    double projective_min = 0.0;
    double povm_min = 0.0;
    BlochVector argmin_axis;
};

struct SimulateReport {
    double theta = 0.0;
    std::string detector;
    long rounds = 0;
    long sessions = 0;
    std::uint64_t seed = 0;
    double bob_error = 0.0;
    long wrong_guesses = 0;
    long tie_count = 0;
    double freq0_bit0 = 0.0;
    double freq0_bit1 = 0.0;
};

struct NosigReport {
    double theta = 0.0;
    std::string detector;
    long rounds = 0;
    std::uint64_t seed = 0;
    double z_threshold = 5.0;
    double freq0_bit0 = 0.0;
    double freq0_bit1 = 0.0;
    double gap = 0.0;
    double z_statistic = 0.0;
    std::string verdict;
};

struct SweepRow {
    double theta = 0.0;
    double overlap = 0.0;
    double pe_min = 0.0;
    double p = 0.0;
    std::string detector;
    double epsilon = 0.0;
    double gap = 0.0;
    double z = 0.0;
    std::string verdict;
};

struct SweepReport {
    std::vector<SweepRow> rows;
};

inline constexpr const char* kSweepCsvHeader = "theta,overlap,pe_min,p,detector,epsilon,gap,z,verdict";

// ---- JSON ----

inline std::string to_json(const BoundReport& r) {
    return "{\"theta\": " + num(r.theta) + ", \"overlap\": " + num(r.overlap) +
           ", \"pe_min\": " + num(r.pe_min) + ", \"p\": " + num(r.p) +
           ", \"optimal_axis\": " + json_array(r.optimal_axis) + "}\n";
}

inline std::string to_json(const SteerReport& r) {
    std::string out = "{\"theta\": " + num(r.theta) + ", \"p\": " + num(r.p);
    out += ", \"psi\": [" + json_array(r.psi.c00) + ", " + json_array(r.psi.c01) + ", " +
           json_array(r.psi.c10) + ", " + json_array(r.psi.c11) + "]";
    out += ", \"rho_bloch\": " + json_array(r.rho_bloch);
    out += ", \"computational\": " + json_array(r.computational);
    out += ", \"primed\": " + json_array(r.primed);
    out += ", \"primed_basis\": {\"first\": " + json_array(r.primed_alice_basis.first) +
           ", \"second\": " + json_array(r.primed_alice_basis.second) + "}";
    out += ", \"orthonormality_defect\": " + num(r.orthonormality_defect);
    out += ", \"reconstruction_residual\": " + num(r.reconstruction_residual);
    out += ", \"residual_computational\": " + num(r.residual_computational);
    out += ", \"residual_primed\": " + num(r.residual_primed);
    return out + "}\n";
}

inline std::string to_json(const OracleReport& r) {
    return "{\"theta\": " + num(r.theta) + ", \"bound\": " + num(r.bound) +
           ", \"grid_points\": " + num(r.grid_points) +
           ", \"povm_samples\": " + num(r.povm_samples) + ", \"seed\": " + num(r.seed) +
           ", \"min_error\": " + num(r.min_error) +
           ", \"projective_min\": " + num(r.projective_min) +
           ", \"povm_min\": " + num(r.povm_min) +
           ", \"argmin_axis\": " + json_array(r.argmin_axis) + "}\n";
}

inline std::string to_json(const SimulateReport& r) {
    return "{\"theta\": " + num(r.theta) + ", \"detector\": " + json_string(r.detector) +
           ", \"rounds\": " + num(r.rounds) + ", \"sessions\": " + num(r.sessions) +
           ", \"seed\": " + num(r.seed) + ", \"bob_error\": " + num(r.bob_error) +
           ", \"wrong_guesses\": " + num(r.wrong_guesses) +
           ", \"tie_count\": " + num(r.tie_count) + ", \"freq0_bit0\": " + num(r.freq0_bit0) +
           ", \"freq0_bit1\": " + num(r.freq0_bit1) + "}\n";
}

inline std::string to_json(const NosigReport& r) {
    return "{\"theta\": " + num(r.theta) + ", \"detector\": " + json_string(r.detector) +
           ", \"rounds\": " + num(r.rounds) + ", \"seed\": " + num(r.seed) +
           ", \"z_threshold\": " + num(r.z_threshold) +
           ", \"freq0_bit0\": " + num(r.freq0_bit0) + ", \"freq0_bit1\": " + num(r.freq0_bit1) +
           ", \"gap\": " + num(r.gap) + ", \"z_statistic\": " + num(r.z_statistic) +
           ", \"verdict\": " + json_string(r.verdict) + "}\n";
}

inline std::string to_json(const SweepRow& r) {
    return "{\"theta\": " + num(r.theta) + ", \"overlap\": " + num(r.overlap) +
           ", \"pe_min\": " + num(r.pe_min) + ", \"p\": " + num(r.p) +
           ", \"detector\": " + json_string(r.detector) + ", \"epsilon\": " + num(r.epsilon) +
           ", \"gap\": " + num(r.gap) + ", \"z\": " + num(r.z) +
           ", \"verdict\": " + json_string(r.verdict) + "}";
}

inline std::string to_json(const SweepReport& r) {
    std::string out = "{\"rows\": [";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (i) out += ", ";
        out += to_json(r.rows[i]);
    }
    return out + "]}\n";
}

// ---- CSV ----

inline std::string to_csv(const BoundReport& r) {
    return std::string("theta,overlap,pe_min,p,axis_x,axis_y,axis_z\n") + num(r.theta) + "," +
           num(r.overlap) + "," + num(r.pe_min) + "," + num(r.p) + "," + num(r.optimal_axis.x) +
           "," + num(r.optimal_axis.y) + "," + num(r.optimal_axis.z) + "\n";
}

inline std::string to_csv(const SteerReport& r) {
    std::string out = "basis,branch,prob,state_re0,state_im0,state_re1,state_im1\n";
    auto row = [&out](const std::string& basis, int branch, const Decomposition::Part& part) {
        out += basis + "," + std::to_string(branch) + "," + num(part.prob) + "," +
               num(part.state.a0().real()) + "," + num(part.state.a0().imag()) + "," +
               num(part.state.a1().real()) + "," + num(part.state.a1().imag()) + "\n";
    };
    for (int i = 0; i < 2; ++i) row("computational", i, r.computational.parts[static_cast<std::size_t>(i)]);
    for (int i = 0; i < 2; ++i) row("primed", i, r.primed.parts[static_cast<std::size_t>(i)]);
    return out;
}

inline std::string to_csv(const OracleReport& r) {
    return std::string(
               "theta,bound,min_error,projective_min,povm_min,axis_x,axis_y,axis_z,grid_points,povm_samples,seed\n") +
           num(r.theta) + "," + num(r.bound) + "," + num(r.min_error) + "," +
           num(r.projective_min) + "," + num(r.povm_min) + "," + num(r.argmin_axis.x) + "," +
           num(r.argmin_axis.y) + "," + num(r.argmin_axis.z) + "," + num(r.grid_points) + "," +
           num(r.povm_samples) + "," + num(r.seed) + "\n";
}

inline std::string to_csv(const SimulateReport& r) {
    return std::string(
               "theta,detector,rounds,sessions,seed,bob_error,wrong_guesses,tie_count,freq0_bit0,freq0_bit1\n") +
           num(r.theta) + "," + r.detector + "," + num(r.rounds) + "," + num(r.sessions) + "," +
           num(r.seed) + "," + num(r.bob_error) + "," + num(r.wrong_guesses) + "," +
           num(r.tie_count) + "," + num(r.freq0_bit0) + "," + num(r.freq0_bit1) + "\n";
}

inline std::string to_csv(const NosigReport& r) {
    return std::string("theta,detector,rounds,seed,freq0_bit0,freq0_bit1,gap,z,verdict\n") +
           num(r.theta) + "," + r.detector + "," + num(r.rounds) + "," + num(r.seed) + "," +
           num(r.freq0_bit0) + "," + num(r.freq0_bit1) + "," + num(r.gap) + "," +
           num(r.z_statistic) + "," + r.verdict + "\n";
}

inline std::string to_csv(const SweepReport& r) {
    std::string out = std::string(kSweepCsvHeader) + "\n";
    for (const auto& row : r.rows) {
        out += num(row.theta) + "," + num(row.overlap) + "," + num(row.pe_min) + "," +
               num(row.p) + "," + row.detector + "," + num(row.epsilon) + "," + num(row.gap) +
               "," + num(row.z) + "," + row.verdict + "\n";
    }
    return out;
}

// ---- text ----

inline std::string to_text(const BoundReport& r) {
    std::ostringstream out;
    out << "theta = " << disp(r.theta) << "\n"
        << "overlap = " << disp(r.overlap) << "\n"
        << "P_E^m = " << disp(r.pe_min) << "\n"
        << "p = " << disp(r.p) << "\n"
        << "optimal axis = (" << disp(r.optimal_axis.x) << ", " << disp(r.optimal_axis.y)
        << ", " << disp(r.optimal_axis.z) << ")\n";
    return out.str();
}

inline std::string to_text(const SteerReport& r) {
    std::ostringstream out;
    auto amp = [](cplx c) {
        std::string s = "(" + disp(c.real()) + (c.imag() < 0 ? " - " : " + ") +
                        disp(std::abs(c.imag())) + "i)";
        return s;
    };
    out << "theta = " << disp(r.theta) << ", p = " << disp(r.p) << "\n"
        << "psi = " << amp(r.psi.c00) << " |00> + " << amp(r.psi.c01) << " |01> + "
        << amp(r.psi.c10) << " |10> + " << amp(r.psi.c11) << " |11>\n"
        << "rho_B Bloch vector = (" << disp(r.rho_bloch.x) << ", " << disp(r.rho_bloch.y)
        << ", " << disp(r.rho_bloch.z) << ")\n";
    auto dec = [&](const char* name, const Decomposition& d, double residual) {
        out << name << " decomposition (residual " << disp(residual) << "):\n";
        for (const auto& part : d.parts) {
            out << "  prob " << disp(part.prob) << "  state " << amp(part.state.a0()) << ", "
                << amp(part.state.a1());
            if (part.degenerate) out << "  [degenerate]";
            out << "\n";
        }
    };
    dec("computational-basis", r.computational, r.residual_computational);
    dec("primed-basis", r.primed, r.residual_primed);
    out << "primed basis |0'> = " << amp(r.primed_alice_basis.first.a0()) << ", "
        << amp(r.primed_alice_basis.first.a1()) << "\n"
        << "primed basis |1'> = " << amp(r.primed_alice_basis.second.a0()) << ", "
        << amp(r.primed_alice_basis.second.a1()) << "\n"
        << "orthonormality defect = " << disp(r.orthonormality_defect) << "\n"
        << "reconstruction residual = " << disp(r.reconstruction_residual) << "\n";
    return out.str();
}

inline std::string to_text(const OracleReport& r) {
    std::ostringstream out;
    out << "theta = " << disp(r.theta) << "\n"
        << "closed-form bound = " << disp(r.bound) << "\n"
        << "oracle minimum = " << disp(r.min_error) << " (grid " << r.grid_points << ", POVMs "
        << r.povm_samples << ", seed " << r.seed << ")\n"
        << "projective-grid minimum = " << disp(r.projective_min) << "\n"
        << "POVM-sample minimum = " << disp(r.povm_min) << "\n"
        << "argmin axis = (" << disp(r.argmin_axis.x) << ", " << disp(r.argmin_axis.y) << ", "
        << disp(r.argmin_axis.z) << ")\n";
    return out.str();
}

inline std::string to_text(const SimulateReport& r) {
    std::ostringstream out;
    out << "theta = " << disp(r.theta) << ", detector = " << r.detector << "\n"
        << "rounds per session = " << r.rounds << ", sessions = " << r.sessions << ", seed = "
        << r.seed << "\n"
        << "bob error = " << disp(r.bob_error) << " (" << r.wrong_guesses << " wrong, "
        << r.tie_count << " ties)\n"
        << "outcome-0 frequency: bit 0 -> " << disp(r.freq0_bit0) << ", bit 1 -> "
        << disp(r.freq0_bit1) << "\n";
    return out.str();
}

inline std::string to_text(const NosigReport& r) {
    std::ostringstream out;
    out << "theta = " << disp(r.theta) << ", detector = " << r.detector << ", rounds = "
        << r.rounds << ", seed = " << r.seed << "\n"
        << "freq0(bit 0) = " << disp(r.freq0_bit0) << ", freq0(bit 1) = " << disp(r.freq0_bit1)
        << "\n"
        << "gap = " << disp(r.gap) << ", z = " << disp(r.z_statistic) << " (threshold "
        << disp(r.z_threshold) << ")\n"
        << "verdict: " << r.verdict << "\n";
    return out.str();
}

inline std::string to_text(const SweepReport& r) {
    std::ostringstream out;
    out << kSweepCsvHeader << "\n";
    for (const auto& row : r.rows) {
        out << disp(row.theta) << "," << disp(row.overlap) << "," << disp(row.pe_min) << ","
            << disp(row.p) << "," << row.detector << "," << disp(row.epsilon) << ","
            << disp(row.gap) << "," << disp(row.z) << "," << row.verdict << "\n";
    }
    return out.str();
}

template <class Report>
std::string render(const Report& r, Format f) {
    switch (f) {
        case Format::json: return to_json(r);
        case Format::csv: return to_csv(r);
        case Format::text: return to_text(r);
    }
    return {};
}

inline void write_output(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot open output path: " + path);
    f << content;
    if (!f) throw IoFailure("failed writing output path: " + path);
}

} // namespace hnl::report
