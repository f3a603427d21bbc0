#pragma once

/// Command-line surface: order / sylow / bound / descent / sweep, each with a
/// deterministic JSON envelope (--json) or a human summary carrying the same
/// verdicts. Exposed as a function so tests can drive it in-process.
///
/// Exit codes: 0 success, 2 usage or domain error, 4 enumeration cap
/// exceeded, 3 a verification verdict of "refuted".

#include <cctype>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gruen/arith.hpp"
#include "gruen/descent.hpp"
#include "gruen/errors.hpp"
#include "gruen/json_io.hpp"
#include "gruen/matgroup.hpp"
#include "gruen/theorems.hpp"
#include "gruen/verify.hpp"
#include "gruen/version.hpp"

namespace gruen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRefuted = 3;
inline constexpr int kExitCap = 4;

inline constexpr const char* kCapEnvVar = "GRUEN_CAP";

namespace detail {

inline json make_envelope(const std::string& command, json parameters, json result) {
    return json{{"command", command},
                {"parameters", std::move(parameters)},
                {"result", std::move(result)},
                {"version", kVersion}};
}

inline void emit(const json& envelope, bool as_json, std::ostream& out,
                 const std::string& human) {
    if (as_json)
        out << envelope.dump(2) << '\n';
    else
        out << human;
}

inline std::uint64_t default_cap() {
    const char* env = std::getenv(kCapEnvVar);
    if (!env) return kDefaultCap;
    std::string s(env);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw domain_error(std::string(kCapEnvVar) + " must be a positive integer");
    const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
    if (v == 0) throw domain_error(std::string(kCapEnvVar) + " must be >= 1");
    return static_cast<std::uint64_t>(v);
}

inline std::vector<std::int64_t> parse_q_set(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item.find_first_not_of("0123456789") != std::string::npos)
            throw domain_error("--q-set entries must be integers, got '" + item + "'");
        out.push_back(std::stoll(item));
    }
    if (out.empty()) throw domain_error("--q-set must name at least one prime power");
    return out;
}

inline std::string describe_prediction(const SylowPrediction& pred, std::int64_t ell) {
    std::ostringstream os;
    os << "clause=" << to_string(pred.clause) << " m_ell=" << pred.m_ell
       << " i=" << pred.i;
    if (pred.clause == SylowClause::elementary_abelian)
        os << " r=" << pred.r << " predicted_order=" << ell << "^"
           << *pred.order_exponent;
    else
        os << " stage=" << pred.r;
    os << " derived_length_bound=" << pred.derived_length_bound;
    return os.str();
}

inline std::string describe_verification(const SylowVerification& v) {
    std::ostringstream os;
    os << "verdict=" << to_string(v.verdict);
    if (v.observed) {
        os << " sylow_order=" << *v.observed_sylow_order
           << " elementary_abelian=" << (v.observed->is_elementary_abelian ? "yes" : "no");
        if (v.observed->derived_length)
            os << " derived_length=" << *v.observed->derived_length;
    }
    return os.str();
}

inline std::string describe_deduction(const Deduction& d) {
    std::ostringstream os;
    os << "conclusion=" << to_string(d.conclusion);
    if (d.subfield) os << " subfield=\"" << *d.subfield << "\"";
    if (d.nu) os << " nu=" << *d.nu;
    if (d.m_ell) os << " m_ell=" << *d.m_ell;
    os << '\n';
    for (const auto& step : d.justification) os << "  via " << step.rule << ": " << step.detail << '\n';
    return os.str();
}

} // namespace detail

/// Run one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"structure predictions for Sylow subgroups of GL_n(F_q), "
                 "trivial-action bounds, and class-group descent deductions"};
    app.require_subcommand(1);

    // order
    auto* order_cmd = app.add_subcommand("order", "order of GL_n(F_q) by the product formula");
    int order_n = 1;
    std::int64_t order_p = 0;
    int order_f = 1;
    bool order_json = false;
    order_cmd->add_option("--n", order_n, "matrix dimension")->required();
    order_cmd->add_option("--p", order_p, "field characteristic (prime)")->required();
    order_cmd->add_option("--f", order_f, "field degree, q = p^f");
    order_cmd->add_flag("--json", order_json, "emit the JSON envelope");

    // sylow
    auto* sylow_cmd = app.add_subcommand("sylow", "predicted ell-Sylow structure of GL_n(F_q)");
    int sylow_n = 1;
    std::int64_t sylow_p = 0, sylow_ell = 0;
    int sylow_f = 1;
    bool sylow_verify = false, sylow_json = false;
    std::uint64_t sylow_cap = 0;
    sylow_cmd->add_option("--n", sylow_n, "matrix dimension")->required();
    sylow_cmd->add_option("--p", sylow_p, "field characteristic (prime)")->required();
    sylow_cmd->add_option("--f", sylow_f, "field degree, q = p^f");
    sylow_cmd->add_option("--ell", sylow_ell, "Sylow prime, ell != p")->required();
    sylow_cmd->add_flag("--verify", sylow_verify, "check the prediction by brute force");
    sylow_cmd->add_option("--cap", sylow_cap, "enumeration cap (elements)");
    sylow_cmd->add_flag("--json", sylow_json, "emit the JSON envelope");

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "trivial-action bound for a group action");
    std::int64_t bound_m = 0, bound_p = 0, bound_ell = 0;
    std::string bound_theorem;
    bool bound_json = false;
    bound_cmd->add_option("--m", bound_m, "p-rank of the acted-on abelian p-group")->required();
    bound_cmd->add_option("--p", bound_p, "prime of the acted-on group")->required();
    bound_cmd->add_option("--ell", bound_ell, "acting prime, ell != p")->required();
    bound_cmd->add_option("--theorem", bound_theorem, "gt1, gt2 or ts1")->required();
    bound_cmd->add_flag("--json", bound_json, "emit the JSON envelope");

    // descent
    auto* descent_cmd = app.add_subcommand("descent", "class-group descent deduction from a scenario file");
    std::string descent_path;
    bool descent_json = false;
    descent_cmd->add_option("scenario", descent_path, "scenario JSON file")->required();
    descent_cmd->add_flag("--json", descent_json, "emit the JSON envelope");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "batch verification over a (n, q, ell) grid");
    int sweep_n_max = 4;
    std::string sweep_q_set = "2,3,4,5,7";
    std::int64_t sweep_ell_max = 13;
    std::uint64_t sweep_cap = 0;
    bool sweep_json = false;
    sweep_cmd->add_option("--n-max", sweep_n_max, "largest dimension");
    sweep_cmd->add_option("--q-set", sweep_q_set, "comma-separated prime powers");
    sweep_cmd->add_option("--ell-max", sweep_ell_max, "largest odd Sylow prime");
    sweep_cmd->add_option("--cap", sweep_cap, "enumeration cap (elements)");
    sweep_cmd->add_flag("--json", sweep_json, "emit the JSON envelope");

    std::vector<const char*> argv;
    argv.push_back("gruen");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kExitOk;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return kExitOk;
        } catch (const CLI::ParseError& e) {
            err << e.what() << '\n';
            return kExitUsage;
        }

        if (*order_cmd) {
            const PrimePower q(order_p, order_f);
            const BigInt order = gl_order(order_n, q);
            const json envelope = detail::make_envelope(
                "order",
                json{{"n", order_n}, {"p", order_p}, {"f", order_f}},
                json{{"order", order.str()}});
            std::ostringstream human;
            human << "|GL_" << order_n << "(F_" << q.q.str() << ")| = " << order.str()
                  << '\n';
            detail::emit(envelope, order_json, out, human.str());
            return kExitOk;
        }

        if (*sylow_cmd) {
            const PrimePower q(sylow_p, sylow_f);
            const std::uint64_t cap = sylow_cap ? sylow_cap : detail::default_cap();
            const SylowPrediction pred = predict_gl_sylow(sylow_n, q, sylow_ell);
            json params{{"n", sylow_n}, {"p", sylow_p},      {"f", sylow_f},
                        {"ell", sylow_ell}, {"verify", sylow_verify}, {"cap", cap}};
            json result{{"prediction", pred}};
            std::ostringstream human;
            human << "GL_" << sylow_n << "(F_" << q.q.str() << "), ell=" << sylow_ell
                  << ": " << detail::describe_prediction(pred, sylow_ell) << '\n';
            int code = kExitOk;
            json envelope;
            if (sylow_verify) {
                const SylowVerification v = verify_sylow_prediction(sylow_n, q, sylow_ell, cap);
                result["verification"] = v;
                envelope = detail::make_envelope("sylow", params, result);
                envelope["verdict"] = to_string(v.verdict);
                human << detail::describe_verification(v) << '\n';
                if (v.verdict == Verdict::refuted) code = kExitRefuted;
                if (v.verdict == Verdict::skipped_too_large) code = kExitCap;
            } else {
                envelope = detail::make_envelope("sylow", params, result);
            }
            detail::emit(envelope, sylow_json, out, human.str());
            return code;
        }

        if (*bound_cmd) {
            if (bound_m < 1) throw domain_error("--m must be >= 1");
            std::string theorem = bound_theorem;
            for (auto& c : theorem)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            json params{{"m", bound_m}, {"p", bound_p}, {"ell", bound_ell},
                        {"theorem", theorem}};
            json result;
            std::ostringstream human;
            if (theorem == "gt1") {
                const auto b = gt1_bound(bound_m, bound_p, bound_ell);
                result["applicable"] = static_cast<bool>(b);
                result["bound"] = b ? json(*b) : json(nullptr);
                if (b)
                    human << "GT1 applicable: m_ell=" << b->m_ell << " nu=" << b->nu
                          << " (" << b->conclusion << ")\n";
                else
                    human << "GT1 not applicable: ell <= m/m_ell\n";
            } else if (theorem == "gt2" || theorem == "ts1") {
                const TrivialActionBound b = theorem == "gt2"
                                                 ? gt2_bound(bound_m, bound_p, bound_ell)
                                                 : ts1_bound(bound_m, bound_p, bound_ell);
                result["applicable"] = true;
                result["bound"] = b;
                human << to_string(b.theorem) << ": m_ell=" << b.m_ell << " nu=" << b.nu
                      << " (" << b.conclusion << ")\n";
            } else {
                throw domain_error("--theorem must be one of gt1, gt2, ts1");
            }
            detail::emit(detail::make_envelope("bound", params, result), bound_json, out,
                         human.str());
            return kExitOk;
        }

        if (*descent_cmd) {
            const DescentScenario scenario = load_scenario(descent_path);
            json params{{"scenario_path", descent_path}};
            json result;
            std::ostringstream human;
            if (scenario.galois) {
                params["galois"] = galois_descriptor_to_json(*scenario.galois);
                params["ell"] = scenario.ell;
                params["p"] = scenario.p;
                params["observed_rank"] = *scenario.observed_rank;
                const Deduction d = deduce_descent(*scenario.galois, scenario.ell,
                                                   scenario.p, *scenario.observed_rank);
                result["descent"] = d;
                human << "descent: " << detail::describe_deduction(d);
            }
            if (scenario.pg0) {
                const Deduction d = check_pg0(scenario.pg0->n, scenario.pg0->h);
                result["pg0"] = d;
                human << "pg0: " << detail::describe_deduction(d);
            }
            if (scenario.pg1) {
                const Deduction d =
                    check_pg1(scenario.pg1->h_L, scenario.pg1->index_LK, scenario.pg1->h_K);
                result["pg1"] = d;
                human << "pg1: " << detail::describe_deduction(d);
            }
            detail::emit(detail::make_envelope("descent", params, result), descent_json,
                         out, human.str());
            return kExitOk;
        }

        if (*sweep_cmd) {
            SweepOptions options;
            options.n_max = sweep_n_max;
            options.q_values = detail::parse_q_set(sweep_q_set);
            options.ell_max = sweep_ell_max;
            options.cap = sweep_cap ? sweep_cap : detail::default_cap();
            for (auto qv : options.q_values) gruen::detail::parse_prime_power(qv);
            const SweepResult result = run_sweep(options);
            json params{{"n_max", options.n_max},
                        {"q_set", options.q_values},
                        {"ell_max", options.ell_max},
                        {"cap", options.cap}};
            json envelope = detail::make_envelope("sweep", params, result);
            envelope["verdict"] = result.refuted > 0 ? "refuted" : "confirmed";
            std::ostringstream human;
            for (const auto& c : result.cases) {
                human << "n=" << c.n << " q=" << c.p;
                if (c.f > 1) human << "^" << c.f;
                human << " ell=" << c.ell << " " << to_string(c.predicted.clause)
                      << " verdict=" << to_string(c.verdict) << '\n';
            }
            human << "summary: confirmed=" << result.confirmed
                  << " refuted=" << result.refuted
                  << " skipped_too_large=" << result.skipped_too_large
                  << " skipped_out_of_scope=" << result.skipped_out_of_scope << '\n';
            detail::emit(envelope, sweep_json, out, human.str());
            return result.refuted > 0 ? kExitRefuted : kExitOk;
        }

        err << "no subcommand selected\n";
        return kExitUsage;
    } catch (const cap_exceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitCap;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace gruen::cli
