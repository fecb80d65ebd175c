// Command-line front end: norm queries, operator application, verification
// suites, interpolation checks, parameter sweeps, oracle queries, and report
// rendering. Exit codes: 0 ok/pass, 1 suite failure, 2 inconclusive,
// 64 usage error, 65 data format error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aniso/interpolation.hpp"
#include "aniso/norms.hpp"
#include "aniso/operators.hpp"
#include "aniso/oracle.hpp"
#include "aniso/report.hpp"
#include "aniso/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using aniso::SampledFunction;
using aniso::SpaceSpec;
using aniso::WeightParams;
using json = nlohmann::ordered_json;

int thread_cap() {
    const char* env = std::getenv("ANISO_THREADS");
    if (!env) return 0;
    return std::max(0, std::atoi(env));
}

SampledFunction load_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return aniso::read_csv(f);
}

// flat key=value config; '#' starts a comment
std::map<std::string, std::string> read_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    if (path.empty()) return kv;
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line without '=': " + line);
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

double cfg_num(const std::map<std::string, std::string>& kv, const std::string& key,
               double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
}

std::vector<double> cfg_list(const std::map<std::string, std::string>& kv,
                             const std::string& key,
                             std::vector<double> fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

void write_artifact(const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream f(path);
    f << j.dump(2) << "\n";
}

json norm_result_json(const aniso::NormResult& r, unsigned long long seed) {
    json j;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["value"] = aniso::format_g15(r.value);
    j["resolution"] = r.resolution;
    j["est_error"] = aniso::format_g15(r.est_error);
    json comp = json::object();
    for (const auto& [k, v] : r.components) comp[k] = aniso::format_g15(v);
    j["components"] = comp;
    return j;
}

SpaceSpec::Family parse_family(const std::string& name) {
    if (name == "L") return SpaceSpec::Family::L;
    if (name == "W") return SpaceSpec::Family::W;
    if (name == "H") return SpaceSpec::Family::H;
    if (name == "B") return SpaceSpec::Family::B;
    if (name == "W0") return SpaceSpec::Family::W0;
    if (name == "H0") return SpaceSpec::Family::H0;
    throw CLI::ValidationError("--family", "unknown family " + name);
}

int verdict_exit(const aniso::VerificationReport& rep) {
    switch (rep.verdict) {
        case aniso::Verdict::pass: return 0;
        case aniso::Verdict::fail: return 1;
        case aniso::Verdict::inconclusive: return 2;
    }
    return 2;
}

int run_verify(const std::string& suite, const std::string& params_path,
               unsigned long long seed, const std::string& out_path) {
    auto kv = read_config(params_path);
    aniso::verify::SuiteOptions opts;
    opts.seed = seed;
    opts.n = int(cfg_num(kv, "n", 256));
    opts.ensemble_size = int(cfg_num(kv, "ensemble", 32));
    opts.T = cfg_num(kv, "T", 1.0);
    opts.p = cfg_num(kv, "p", 2.0);
    opts.mu = cfg_num(kv, "mu", 1.0);
    WeightParams wp(opts.p, opts.mu);

    aniso::VerificationReport rep;
    if (suite == "hardy") {
        rep = aniso::verify::run_hardy_suite(wp, cfg_num(kv, "s", 1.0), opts);
    } else if (suite == "poincare") {
        rep = aniso::verify::run_poincare_suite(
            wp, cfg_list(kv, "T_values", {0.25, 1.0, 4.0}), cfg_num(kv, "s", 1.0),
            opts);
    } else if (suite == "embedding") {
        aniso::verify::EmbeddingQuery q;
        q.p = opts.p;
        q.mu = opts.mu;
        q.q = cfg_num(kv, "q", 4.0);
        q.s = cfg_num(kv, "s", 0.8);
        q.tau = cfg_num(kv, "tau", 0.5);
        const std::string tgt = kv.count("target") ? kv.at("target") : "weighted";
        q.target = tgt == "unweighted"
                       ? aniso::verify::EmbeddingQuery::Target::unweighted
                       : (tgt == "sup" ? aniso::verify::EmbeddingQuery::Target::sup
                                       : aniso::verify::EmbeddingQuery::Target::weighted);
        rep = aniso::verify::run_embedding_suite(q, opts);
    } else if (suite == "mixed") {
        aniso::verify::MixedDerivativeParams mp;
        mp.s = cfg_num(kv, "s", 0.0);
        mp.r = cfg_num(kv, "r", 0.0);
        mp.alpha = cfg_num(kv, "alpha", 1.0);
        mp.beta = cfg_num(kv, "beta", 2.0);
        mp.sigma = cfg_num(kv, "sigma", 0.5);
        rep = aniso::verify::run_mixed_derivative_suite(mp, wp, opts);
    } else if (suite == "trace-time" || suite == "trace-space") {
        aniso::verify::TraceQuery q;
        q.p = opts.p;
        q.mu = opts.mu;
        if (suite == "trace-space") {
            q.variant = aniso::verify::TraceQuery::Variant::spatial;
            q.s = cfg_num(kv, "s", 1.0);
            q.m = int(cfg_num(kv, "m", 1));
        } else {
            q.variant = aniso::verify::TraceQuery::Variant::temporal_alpha_scaled;
            q.alpha = cfg_num(kv, "alpha", 1.0);
            q.m = int(cfg_num(kv, "m", 1));
            q.beta = cfg_num(kv, "beta", 2.0 * q.m);
        }
        rep = aniso::verify::run_trace_suites(q, opts);
    } else if (suite == "interp") {
        aniso::Grid1D grid = aniso::default_grid(
            aniso::TimeDomain::finite(opts.T), int(cfg_num(kv, "grid_n", 128)));
        auto ens = opts.mu < 1.0
                       ? aniso::verify::zero_trace_ensemble(grid, opts.ensemble_size,
                                                            seed, 1)
                       : aniso::verify::smooth_ensemble(grid, opts.ensemble_size, seed);
        aniso::InterpIdentityOptions io;
        io.grid_n = grid.size();
        rep = aniso::check_interp_identity(ens, wp, cfg_num(kv, "s1", 0.0),
                                           cfg_num(kv, "s2", 1.0),
                                           cfg_num(kv, "theta", 0.5), io);
        rep.seed = seed;
        rep.finalize(cfg_num(kv, "bracket", 3.0), 0.10);
    } else if (suite == "t-sweep") {
        const std::string target = kv.count("target") ? kv.at("target") : "extend0";
        rep = aniso::verify::run_T_uniformity_sweep(
            target, cfg_list(kv, "T_values", {0.1, 1.0, 10.0}), opts);
    } else {
        throw CLI::ValidationError("--suite", "unknown suite " + suite);
    }

    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << aniso::to_json(rep);
    }
    std::cout << aniso::render_report(rep);
    return verdict_exit(rep);
}

}  // namespace

int main(int argc, char** argv) {
    Eigen::setNbThreads(std::max(1, thread_cap()));

    CLI::App app{"weighted fractional Sobolev space toolkit"};
    app.require_subcommand(1);

    // norm
    auto* cnorm = app.add_subcommand("norm", "compute a space norm of sampled data");
    std::string family = "L", input, report_path, config_path;
    double s = 0.0, p = 2.0, mu = 1.0;
    int grid_n = 0;
    cnorm->add_option("--family", family, "L|W|H|B|W0|H0");
    cnorm->add_option("--s", s, "order");
    cnorm->add_option("--p", p, "integrability exponent");
    cnorm->add_option("--mu", mu, "weight parameter");
    cnorm->add_option("--input", input, "CSV input (t,v1..vd)")->required();
    cnorm->add_option("--grid-n", grid_n, "resample to this resolution");
    cnorm->add_option("--report", report_path, "JSON output path");

    // op
    auto* cop = app.add_subcommand("op", "apply an operator to sampled data");
    std::string op_name, op_in, op_out;
    double op_order = 1.0, op_shift = 1.0, op_t0 = 0.0, op_sigma = 0.0;
    int op_k = 1;
    cop->add_option("--name", op_name,
                    "phi-mu|phi-mu-inv|extend0|extend|translate|fracderiv|"
                    "laplacian|trace-t0")
        ->required();
    cop->add_option("--input", op_in, "CSV input")->required();
    cop->add_option("--output", op_out, "CSV output path");
    cop->add_option("--p", p);
    cop->add_option("--mu", mu);
    cop->add_option("--order", op_order, "fractional order");
    cop->add_option("--shift", op_shift, "multiplier shift");
    cop->add_option("--t0", op_t0, "translation distance");
    cop->add_option("--sigma", op_sigma, "trace formula window (0 = T/2)");
    cop->add_option("--k", op_k, "reflection order");

    // verify
    auto* cver = app.add_subcommand("verify", "run a verification suite");
    std::string suite, ver_out;
    unsigned long long seed = 7;
    cver->add_option("--suite", suite,
                     "hardy|poincare|embedding|mixed|trace-time|trace-space|"
                     "interp|t-sweep")
        ->required();
    cver->add_option("--params", config_path, "flat key=value config file");
    cver->add_option("--seed", seed, "ensemble seed");
    cver->add_option("--out", ver_out, "JSON report path");

    // interp
    auto* cint = app.add_subcommand("interp", "real-interpolation identity check");
    double s1 = 0.0, s2 = 1.0, theta = 0.5;
    int ens_n = 8;
    std::string int_out;
    cint->add_option("--s1", s1);
    cint->add_option("--s2", s2);
    cint->add_option("--theta", theta);
    cint->add_option("--p", p);
    cint->add_option("--mu", mu);
    cint->add_option("--ensemble", ens_n, "ensemble size");
    cint->add_option("--seed", seed);
    cint->add_option("--report", int_out, "JSON report path");

    // sweep
    auto* cswp = app.add_subcommand("sweep", "T-uniformity sweep");
    std::string sweep_target = "extend0";
    std::vector<double> sweep_T = {0.1, 1.0, 10.0};
    cswp->add_option("--target", sweep_target, "extend0|extend|identity");
    cswp->add_option("--T", sweep_T, "interval lengths");
    cswp->add_option("--p", p);
    cswp->add_option("--mu", mu);
    cswp->add_option("--seed", seed);
    cswp->add_option("--out", ver_out, "JSON report path");

    // oracle
    auto* cora = app.add_subcommand("oracle", "closed-form reference values");
    std::string cf_kind = "monomial";
    double cf_c = 1.0, cf_gamma = 0.0, cf_lambda = -1.0, cf_k = 1.0, cf_T = 1.0;
    cora->add_option("--kind", cf_kind, "monomial|exponential|trig");
    cora->add_option("--coeff", cf_c);
    cora->add_option("--gamma", cf_gamma);
    cora->add_option("--lambda", cf_lambda);
    cora->add_option("--k", cf_k);
    cora->add_option("--p", p);
    cora->add_option("--mu", mu);
    cora->add_option("--T", cf_T);

    // report
    auto* crep = app.add_subcommand("report", "render a JSON report as text");
    std::string rep_in;
    crep->add_option("--input", rep_in, "JSON report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (cnorm->parsed()) {
            WeightParams wp(p, mu);
            SampledFunction u = load_csv(input);
            if (grid_n > 0 && grid_n != u.grid.size()) {
                aniso::Grid1D g = aniso::default_grid(u.grid.domain, grid_n);
                u = aniso::resample(u, g);
            }
            aniso::NormResult res =
                family == "L"
                    ? aniso::norms::weighted_lp_norm(u, wp)
                    : aniso::norms::fractional_norm(
                          u, SpaceSpec(parse_family(family), s, wp));
            json j = norm_result_json(res, seed);
            write_artifact(report_path, j);
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (cop->parsed()) {
            WeightParams wp(p, mu);
            SampledFunction u = load_csv(op_in);
            if (op_name == "trace-t0") {
                const double sig = op_sigma > 0.0 ? op_sigma : u.grid.T() / 2.0;
                Eigen::VectorXd tr = aniso::ops::trace_t0(u, wp, sig);
                Eigen::VectorXd tr2 = aniso::ops::trace_t0(u, wp, u.grid.T() / 4.0);
                json j;
                j["version"] = kVersion;
                j["sigma"] = aniso::format_g15(sig);
                json vals = json::array(), diag = json::array();
                for (int i = 0; i < tr.size(); ++i) {
                    vals.push_back(aniso::format_g15(tr[i]));
                    diag.push_back(aniso::format_g15(tr[i] - tr2[i]));
                }
                j["trace"] = vals;
                j["sigma_consistency"] = diag;
                std::cout << j.dump(2) << "\n";
                return 0;
            }
            SampledFunction out;
            if (op_name == "phi-mu")
                out = aniso::ops::phi_mu(u, wp, true);
            else if (op_name == "phi-mu-inv")
                out = aniso::ops::phi_mu(u, wp, false);
            else if (op_name == "extend0")
                out = aniso::ops::extend_zero(u, wp);
            else if (op_name == "extend")
                out = aniso::ops::extend_general(u, op_k);
            else if (op_name == "translate")
                out = aniso::ops::translate(u, op_t0);
            else if (op_name == "fracderiv")
                out = aniso::ops::fractional_apply(
                    u, aniso::FractionalOperatorSpec(
                           aniso::FractionalOperatorSpec::Kind::time_deriv_minus,
                           op_order, op_shift));
            else if (op_name == "laplacian")
                out = aniso::ops::fractional_apply(
                    u, aniso::FractionalOperatorSpec(
                           aniso::FractionalOperatorSpec::Kind::laplacian, op_order,
                           op_shift));
            else
                throw CLI::ValidationError("--name", "unknown operator " + op_name);
            if (op_out.empty()) {
                aniso::write_csv(std::cout, out);
            } else {
                std::ofstream f(op_out);
                aniso::write_csv(f, out);
            }
            return 0;
        }
        if (cver->parsed()) return run_verify(suite, config_path, seed, ver_out);
        if (cint->parsed()) {
            WeightParams wp(p, mu);
            aniso::Grid1D grid =
                aniso::default_grid(aniso::TimeDomain::finite(1.0), 128);
            auto ens = mu < 1.0 ? aniso::verify::zero_trace_ensemble(
                                      grid, std::max(8, ens_n), seed, 1)
                                : aniso::verify::smooth_ensemble(
                                      grid, std::max(8, ens_n), seed);
            aniso::InterpIdentityOptions io;
            io.grid_n = grid.size();
            auto rep = aniso::check_interp_identity(ens, wp, s1, s2, theta, io);
            rep.seed = seed;
            rep.finalize(3.0, 0.10);
            if (!int_out.empty()) {
                std::ofstream f(int_out);
                f << aniso::to_json(rep);
            }
            std::cout << aniso::render_report(rep);
            return verdict_exit(rep);
        }
        if (cswp->parsed()) {
            aniso::verify::SuiteOptions opts;
            opts.seed = seed;
            opts.n = 64;
            opts.p = p;
            opts.mu = mu;
            auto rep = aniso::verify::run_T_uniformity_sweep(sweep_target, sweep_T, opts);
            if (!ver_out.empty()) {
                std::ofstream f(ver_out);
                f << aniso::to_json(rep);
            }
            std::cout << aniso::render_report(rep);
            return verdict_exit(rep);
        }
        if (cora->parsed()) {
            WeightParams wp(p, mu);
            aniso::oracle::ClosedForm cf;
            if (cf_kind == "monomial")
                cf = aniso::oracle::ClosedForm::monomial(cf_c, cf_gamma);
            else if (cf_kind == "exponential")
                cf = aniso::oracle::ClosedForm::exponential(cf_c, cf_lambda);
            else if (cf_kind == "trig")
                cf = aniso::oracle::ClosedForm::trig(cf_c, cf_k);
            else
                throw CLI::ValidationError("--kind", "unknown kind " + cf_kind);
            json j;
            j["version"] = kVersion;
            j["value"] =
                aniso::format_g15(aniso::oracle::exact_weighted_lp(cf, wp, cf_T));
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (crep->parsed()) {
            std::ifstream f(rep_in);
            if (!f) throw std::runtime_error("cannot open " + rep_in);
            json j = json::parse(f);
            aniso::VerificationReport rep;
            rep.suite = j.value("suite", "");
            rep.worst_ratio = std::stod(j.value("worst_ratio", "0"));
            rep.refinement_drift = std::stod(j.value("refinement_drift", "0"));
            const std::string v = j.value("verdict", "inconclusive");
            rep.verdict = v == "pass" ? aniso::Verdict::pass
                                      : (v == "fail" ? aniso::Verdict::fail
                                                     : aniso::Verdict::inconclusive);
            const json instances = j.value("instances", json::array());
            for (const auto& ji : instances) {
                aniso::CheckInstance inst;
                const json params = ji.value("params", json::object());
                for (const auto& [k, val] : params.items())
                    inst.params[k] = std::stod(val.get<std::string>());
                inst.lhs = std::stod(ji.value("lhs", "0"));
                inst.rhs = std::stod(ji.value("rhs", "0"));
                inst.ratio = std::stod(ji.value("ratio", "0"));
                inst.resolution = ji.value("resolution", 0);
                rep.instances.push_back(inst);
            }
            std::cout << aniso::render_report(rep);
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 64;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 65;
    } catch (const std::runtime_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    }
    return 64;
}
