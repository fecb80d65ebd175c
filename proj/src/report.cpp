#include "aniso/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace aniso {

std::string format_g15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void VerificationReport::finalize(double threshold, double drift_tolerance) {
    ratio_threshold = threshold;
    drift_tol = drift_tolerance;
    if (worst_ratio == 0.0)
        for (const auto& inst : instances)
            worst_ratio = std::max(worst_ratio, inst.ratio);
    if (worst_ratio > threshold)
        verdict = Verdict::fail;
    else if (refinement_drift > drift_tolerance)
        verdict = Verdict::inconclusive;
    else
        verdict = Verdict::pass;
}

std::string to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["verdict"] = to_string(r.verdict);
    j["worst_ratio"] = format_g15(r.worst_ratio);
    j["refinement_drift"] = format_g15(r.refinement_drift);
    j["ratio_threshold"] = format_g15(r.ratio_threshold);
    j["drift_tol"] = format_g15(r.drift_tol);
    j["seed"] = r.seed;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.extra) extra[k] = format_g15(v);
    j["extra"] = extra;
    nlohmann::ordered_json insts = nlohmann::ordered_json::array();
    for (const auto& inst : r.instances) {
        nlohmann::ordered_json ji;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : inst.params) params[k] = format_g15(v);
        ji["params"] = params;
        ji["lhs"] = format_g15(inst.lhs);
        ji["rhs"] = format_g15(inst.rhs);
        ji["ratio"] = format_g15(inst.ratio);
        ji["resolution"] = inst.resolution;
        insts.push_back(ji);
    }
    j["instances"] = insts;
    return j.dump(2) + "\n";
}

std::string render_report(const VerificationReport& r) {
    std::ostringstream os;
    os << "suite: " << r.suite << "\n";
    std::string v = to_string(r.verdict);
    for (auto& c : v) c = char(::toupper(c));
    os << v << " worst_ratio=" << format_g15(r.worst_ratio)
       << " drift=" << format_g15(r.refinement_drift) << "\n";
    os << "params | lhs | rhs | ratio | resolution\n";
    for (const auto& inst : r.instances) {
        bool first = true;
        for (const auto& [k, val] : inst.params) {
            if (!first) os << " ";
            os << k << "=" << format_g15(val);
            first = false;
        }
        os << " | " << format_g15(inst.lhs) << " | " << format_g15(inst.rhs)
           << " | " << format_g15(inst.ratio) << " | " << inst.resolution << "\n";
    }
    return os.str();
}

}  // namespace aniso
