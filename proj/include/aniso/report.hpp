#pragma once

#include <map>
#include <string>
#include <vector>

namespace aniso {

/// One checked inequality instance.
struct CheckInstance {
    std::map<std::string, double> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs / rhs
    int resolution = 0;
};

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

/// Per-suite record of checked inequality instances.
struct VerificationReport {
    std::string suite;
    std::vector<CheckInstance> instances;
    double worst_ratio = 0.0;
    double refinement_drift = 0.0;  // relative change of worst ratio under refinement
    Verdict verdict = Verdict::inconclusive;
    double ratio_threshold = 0.0;
    double drift_tol = 0.0;
    std::map<std::string, double> extra;  // suite-specific diagnostics
    unsigned long long seed = 0;

    void finalize(double threshold, double drift_tolerance);
};

/// Deterministic JSON with 15-significant-digit decimal numbers.
std::string to_json(const VerificationReport& r);

/// Human-readable table rendering; deterministic byte-for-byte.
std::string render_report(const VerificationReport& r);

/// Format a double as a decimal string with 15 significant digits.
std::string format_g15(double x);

}  // namespace aniso
