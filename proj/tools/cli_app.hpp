#pragma once

// Command-line driver: `verify <suite>` runs checks and reports them, `emit <what>`
// writes data. run() is separate from main() so the tests can drive it with argv
// vectors and captured streams.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qchihara/discrete.hpp"
#include "qchihara/hankel.hpp"
#include "qchihara/identities.hpp"
#include "qchihara/measures.hpp"

namespace qchihara::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct CheckRecord {
    std::string suite;
    std::string check_id;
    std::string paper_ref;  ///< short name of the identity being checked
    bool passed = false;
    double residual = 0.0;
    double elapsed_ms = 0.0;
    std::string detail;
};

struct RunConfig {
    std::string command;  ///< verify | emit
    std::string target;   ///< identities | hankel | measures | discrete | all | density | moments | measure
    std::optional<unsigned> n_max;
    std::optional<double> tol;
    TruncationPolicy truncation;
    std::string output;
    std::string format = "json";
    bool no_timings = false;

    std::string kind = "qhermite";
    double q = 0.5;
    double rho = 0.5;
    double y = 0.0;
    double a = 0.0;
    double b = 0.5;
    unsigned points = 200;
    unsigned m = 1;
    int rho_sign = 1;

    unsigned bound(unsigned fallback) const { return n_max.value_or(fallback); }
    double tolerance(double fallback) const { return tol.value_or(fallback); }
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

inline void add_exact(std::vector<CheckRecord>& out, const std::string& suite, const std::string& ref,
                      const ExactReport& report) {
    for (const auto& c : report.cases) {
        out.push_back({suite, report.identity + "/" + c.label, ref, c.holds(), c.residual.max_abs_coefficient(),
                       report.elapsed_ms, c.holds() ? "" : "residual " + c.residual.to_string()});
    }
}

inline void add_numeric(std::vector<CheckRecord>& out, const std::string& suite, const std::string& ref,
                        const std::string& prefix, const NumericCase& c, double elapsed_ms) {
    out.push_back({suite, prefix + "/" + c.label, ref, c.passed(), c.residual, elapsed_ms,
                   "lhs=" + fmt(c.lhs) + " rhs=" + fmt(c.rhs)});
}

inline void add_hankel(std::vector<CheckRecord>& out, const std::string& ref, const HankelReport& r, Var watched) {
    const bool free_of = r.constant_in.size() == 1 && r.constant_in[0] == watched;
    std::string detail = "det_n=" + r.det_n.to_string() + "; det_next=" + r.det_next.to_string() +
                         "; ratio=" + (r.ratio ? r.ratio->to_string() : std::string("inexact")) +
                         "; predicted=" + r.predicted.to_string() + "; free_of_" + std::string(name_of(watched)) + "=" +
                         (free_of ? "true" : "false");
    out.push_back({"hankel", r.family + "/n=" + std::to_string(r.n), ref, r.matches && free_of,
                   r.residual.max_abs_coefficient(), r.elapsed_ms, std::move(detail)});
}

}  // namespace detail

inline std::vector<CheckRecord> suite_identities(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    detail::add_exact(out, "identities", "connection", verify_mi(cfg.bound(10)));
    detail::add_exact(out, "identities", "expansion", verify_expansion(cfg.bound(10)));
    detail::add_exact(out, "identities", "zero-convolution", verify_convolution_zero(cfg.bound(12)));
    const NumericReport bnah = verify_bnah(cfg.bound(8), {0.49, -0.49, 0.81, -0.81}, {0.0, 0.7, 1.3}, cfg.tolerance(1e-9));
    for (const auto& c : bnah.cases) detail::add_numeric(out, "identities", "b-inverse-hermite", "b-inverse-hermite", c, bnah.elapsed_ms);
    const T2Report t2 = verify_t2(cfg.bound(8));
    detail::add_exact(out, "identities", "orthogonality", t2.annihilation);
    detail::add_exact(out, "identities", "orthogonality", t2.orthogonality);
    detail::add_exact(out, "identities", "norm-recursion", verify_t2_norms(std::min(cfg.bound(6), 6u)));
    return out;
}

inline std::vector<CheckRecord> suite_hankel(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    for (const auto& r : verify_hermite_hankel(cfg.bound(7))) detail::add_hankel(out, "hermite-hankel", r, Var::x);
    for (const auto& r : verify_c4(cfg.bound(6))) detail::add_hankel(out, "moment-hankel", r, Var::y);
    return out;
}

inline std::vector<CheckRecord> suite_measures(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    const TruncationPolicy& tp = cfg.truncation;
    auto timed = [&](const std::string& ref, const std::string& prefix, auto&& make_case) {
        Stopwatch watch;
        const NumericCase c = make_case();
        detail::add_numeric(out, "measures", ref, prefix, c, watch.elapsed_ms());
    };

    timed("mu-density", "semicircle", [&] {
        const double v = density_qhermite(0.0, 0.0, tp);
        return NumericCase{"q=0,x=0", v, 1.0 / std::numbers::pi, std::abs(v - 1.0 / std::numbers::pi),
                           cfg.tolerance(1e-10)};
    });
    auto normalization = [&](const std::string& label, double q, auto&& fn) {
        return [&, label, q] {
            const double v = integrate(fn, q).value;
            return NumericCase{label, v, 1.0, std::abs(v - 1.0), cfg.tolerance(1e-7)};
        };
    };
    for (double q : {-0.4, 0.0, 0.3, 0.7}) {
        timed("mu-density", "normalization", normalization("qhermite,q=" + detail::fmt(q), q,
                                                   [&](double x) { return density_qhermite(x, q, tp); }));
        for (double rho : {0.2, 0.6})
            for (double y : {0.0, 0.8})
                timed("mu-density", "normalization",
                      normalization("mu,q=" + detail::fmt(q) + ",rho=" + detail::fmt(rho) + ",y=" + detail::fmt(y), q,
                                    [&](double x) { return density_mu(x, rho, y, q, tp); }));
        timed("asc-density", "normalization", normalization("asc,q=" + detail::fmt(q) + ",a=0.4,b=0.49", q,
                                                   [&](double x) { return density_asc(x, 0.4, 0.49, q, tp); }));
    }

    {
        const double q = 0.5, a = 0.4, b = 0.49;
        const double t = cfg.tolerance(1e-6);
        for (unsigned n = 0; n <= 6; ++n)
            for (unsigned m = 0; m <= n; ++m) {
                if (m == n && n > 5) continue;
                timed("asc-density", "asc-orthogonality", [&] {
                    const double v = integrate(
                                         [&](double x) {
                                             const auto p = numeric::asc_values(n, x, q, a, b);
                                             return p[m] * p[n] * density_asc(x, a, b, q, tp);
                                         },
                                         q)
                                         .value;
                    double expected = 0.0;
                    if (m == n) {
                        expected = 1.0;
                        for (unsigned i = 1; i <= n; ++i) expected *= numeric::q_int(i, q) * (1 - b * std::pow(q, i - 1.0));
                    }
                    return NumericCase{"m=" + std::to_string(m) + ",n=" + std::to_string(n), v, expected,
                                       std::abs(v - expected), t};
                });
            }
    }

    for (unsigned n = 0; n <= cfg.bound(8); ++n)
        timed("conditional-moment", "conditional-moment",
              [&] { return conditional_moment_case(n, 0.6, 0.3, 0.5, cfg.tolerance(1e-6), {}, tp); });

    for (double q : {-0.4, 0.3, 0.7})
        for (double rho : {0.2, 0.6})
            for (double x : {-1.0, 0.0, 1.0})
                for (double y : {-1.0, 0.0, 1.0})
                    timed("poisson-mehler", "kernel", [&] { return kernel_agreement_case(x, y, rho, q, cfg.tolerance(1e-8), tp); });

    timed("chapman-kolmogorov", "chapman", [&] { return verify_chapman(0.5, 0.6, 0.2, -0.4, 0.5, cfg.tolerance(1e-6), {}, tp); });
    timed("chapman-kolmogorov", "chapman", [&] { return verify_chapman(0.5, 0.0, 0.2, -0.4, 0.5, cfg.tolerance(1e-7), {}, tp); });
    timed("chapman-kolmogorov", "chapman", [&] { return verify_chapman(0.6, 0.7, 0.5, 0.5, 0.3, cfg.tolerance(1e-6), {}, tp); });
    return out;
}

inline std::vector<CheckRecord> suite_discrete(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    auto verdict_record = [&](const Rational& rho2, const Rational& q, Verdict want, unsigned index) {
        Stopwatch watch;
        const ExistenceVerdict v = existence_check(rho2, q, 20);
        const unsigned got = v.m ? *v.m : v.first_negative.value_or(0);
        std::ostringstream id;
        id << "existence/rho2=" << rho2 << ",q=" << q;
        out.push_back({"discrete", id.str(), "nonexistence", v.kind == want && got == index, 0.0, watch.elapsed_ms(),
                       to_string(v.kind) + "(" + std::to_string(got) + ")"});
    };
    verdict_record(make_rational(1, 4), 2, Verdict::Member, 2);
    verdict_record(make_rational(1, 3), 2, Verdict::NoSolution, 3);

    const unsigned m_max = cfg.bound(5);
    for (double q : {1.5, 2.0, 3.0})
        for (unsigned m = 0; m <= m_max; ++m)
            for (double y : {0.0, 0.5, -0.5}) {
                Stopwatch watch;
                std::ostringstream id;
                id << "measure/q=" << q << ",m=" << m << ",y=" << y;
                CheckRecord rec{"discrete", id.str(), "discrete-measure", false, 0.0, 0.0, ""};
                try {
                    const DiscreteMeasure mu = discrete_measure(m, member_rho(m, q), y, q);
                    const NumericReport report = verify_discrete_solution(mu, 2 * m + 4, cfg.tolerance(1e-7));
                    rec.passed = mu.support.size() == m + 1 && report.ok();
                    rec.residual = report.worst() ? report.worst()->residual : 0.0;
                    rec.detail = "points=" + std::to_string(mu.support.size()) +
                                 (mu.single_point ? " single-point" : "") +
                                 " christoffel_gap=" + detail::fmt(mu.christoffel_gap);
                } catch (const std::exception& e) {
                    rec.detail = e.what();
                }
                rec.elapsed_ms = watch.elapsed_ms();
                out.push_back(std::move(rec));
            }

    for (const Rational& q : {make_rational(3, 2), Rational(2), Rational(3)})
        for (unsigned m = 0; m <= std::min(m_max, 4u); ++m) {
            Stopwatch watch;
            const DivisionResult d = support_divisibility(m, q);
            std::ostringstream id;
            id << "divisibility/q=" << q << ",m=" << m;
            out.push_back({"discrete", id.str(), "discrete-measure", d.remainder.is_zero(),
                           d.remainder.max_abs_coefficient(), watch.elapsed_ms(), ""});
        }
    return out;
}

inline std::vector<CheckRecord> run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "identities") return suite_identities(cfg);
    if (name == "hankel") return suite_hankel(cfg);
    if (name == "measures") return suite_measures(cfg);
    if (name == "discrete") return suite_discrete(cfg);
    std::vector<CheckRecord> all;
    for (const char* s : {"identities", "hankel", "measures", "discrete"}) {
        auto part = run_suite(s, cfg);
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

inline void write_report(std::ostream& os, const RunConfig& cfg, const std::vector<CheckRecord>& records) {
    const bool ok = std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.passed; });
    auto elapsed = [&](const CheckRecord& r) { return cfg.no_timings ? 0.0 : r.elapsed_ms; };
    if (cfg.format == "json") {
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& r : records) {
            nlohmann::ordered_json j;
            j["suite"] = r.suite;
            j["check_id"] = r.check_id;
            j["paper_ref"] = r.paper_ref;
            j["status"] = r.passed ? "pass" : "fail";
            j["residual"] = r.residual;
            j["elapsed_ms"] = elapsed(r);
            if (!r.detail.empty()) j["detail"] = r.detail;
            checks.push_back(std::move(j));
        }
        nlohmann::ordered_json doc;
        doc["command"] = cfg.command + " " + cfg.target;
        doc["status"] = ok ? "pass" : "fail";
        doc["passed"] = std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.passed; });
        doc["total"] = records.size();
        doc["checks"] = std::move(checks);
        os << doc.dump(2) << '\n';
    } else if (cfg.format == "csv") {
        os << "suite,check_id,paper_ref,status,residual,elapsed_ms\n";
        os << std::setprecision(17);
        for (const auto& r : records) {
            os << r.suite << ",\"" << r.check_id << "\"," << r.paper_ref << ',' << (r.passed ? "pass" : "fail") << ','
               << r.residual << ',' << elapsed(r) << '\n';
        }
    } else {
        for (const auto& r : records) {
            os << (r.passed ? "PASS " : "FAIL ") << r.suite << ' ' << r.check_id << " [" << r.paper_ref
               << "] residual=" << r.residual;
            if (!cfg.no_timings) os << " (" << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms)"
                                    << std::defaultfloat << std::setprecision(6);
            if (!r.detail.empty()) os << "  " << r.detail;
            os << '\n';
        }
        os << (ok ? "all checks passed" : "some checks failed") << '\n';
    }
}

inline void emit_density(std::ostream& os, const RunConfig& cfg) {
    DensityParams p;
    p.q = cfg.q;
    if (cfg.kind == "qhermite") {
        p.kind = DensityKind::qhermite;
    } else if (cfg.kind == "mu") {
        p.kind = DensityKind::mu;
        p.rho = cfg.rho;
        p.y = cfg.y;
    } else {
        p.kind = DensityKind::asc;
        p.a = cfg.a;
        p.b = cfg.b;
    }
    const auto samples = density_samples(p, cfg.points, cfg.truncation);
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        doc["kind"] = cfg.kind;
        doc["x"] = nlohmann::json::array();
        doc["density"] = nlohmann::json::array();
        for (const auto& [x, d] : samples) {
            doc["x"].push_back(x);
            doc["density"].push_back(d);
        }
        os << doc.dump(2) << '\n';
        return;
    }
    os << "x,density\n" << std::setprecision(17);
    for (const auto& [x, d] : samples) os << x << ',' << d << '\n';
}

inline void emit_moments(std::ostream& os, const RunConfig& cfg) {
    const auto moments = moments_of_mu(cfg.bound(6));
    if (cfg.format == "json") {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (std::size_t n = 0; n < moments.size(); ++n) doc.push_back({{"n", n}, {"moment", moments[n].to_string()}});
        os << doc.dump(2) << '\n';
        return;
    }
    if (cfg.format == "csv") os << "n,moment\n";
    for (std::size_t n = 0; n < moments.size(); ++n) {
        if (cfg.format == "csv") {
            os << n << ",\"" << moments[n].to_string() << "\"\n";
        } else {
            os << "m_" << n << " = " << moments[n].to_string() << '\n';
        }
    }
}

inline void emit_measure(std::ostream& os, const RunConfig& cfg) {
    const DiscreteMeasure mu = discrete_measure(cfg.m, member_rho(cfg.m, cfg.q, cfg.rho_sign), cfg.y, cfg.q);
    nlohmann::ordered_json doc;
    doc["m"] = mu.m;
    doc["q"] = mu.q;
    doc["rho"] = mu.rho;
    doc["y"] = mu.y;
    doc["support"] = mu.support;
    doc["weights"] = mu.weights;
    doc["single_point"] = mu.single_point;
    doc["christoffel_gap"] = mu.christoffel_gap;
    os << std::setprecision(17) << doc.dump(2) << '\n';
}

/// Parses argv and runs the command. Reports go to `out` (or --output), diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    if (const char* env = std::getenv("QCHIHARA_TOL")) {
        try {
            cfg.tol = std::stod(env);
        } catch (const std::exception&) {
            err << "QCHIHARA_TOL is not a number: " << env << '\n';
            return kExitUsage;
        }
    }

    CLI::App app{"Exact and numeric checks for q-Hermite and Al-Salam--Chihara identities", "qchihara"};
    app.require_subcommand(1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n-max", cfg.n_max, "degree bound for every check in the suite")
            ->check(CLI::Range(1u, 64u));
        sub->add_option("--tol", cfg.tol, "numeric tolerance for every numeric check")
            ->check(CLI::PositiveNumber);
        sub->add_option("--epsilon", cfg.truncation.epsilon, "product truncation threshold")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-factors", cfg.truncation.max_factors, "product truncation cap")
            ->check(CLI::Range(1u, 100000u));
        sub->add_option("--output,-o", cfg.output, "write the report to this file");
        sub->add_option("--format", cfg.format, "json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_flag("--no-timings", cfg.no_timings, "report elapsed_ms as 0 for reproducible output");
    };

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("suite", cfg.target, "identities, hankel, measures, discrete or all")
        ->required()
        ->check(CLI::IsMember({"identities", "hankel", "measures", "discrete", "all"}));
    add_common(verify);

    CLI::App* emit = app.add_subcommand("emit", "write densities, moments or a discrete measure");
    emit->add_option("what", cfg.target, "density, moments or measure")
        ->required()
        ->check(CLI::IsMember({"density", "moments", "measure"}));
    add_common(emit);
    emit->add_option("--kind", cfg.kind, "density: qhermite, mu or asc")->check(CLI::IsMember({"qhermite", "mu", "asc"}));
    emit->add_option("--q", cfg.q, "q");
    emit->add_option("--rho", cfg.rho, "mu: correlation");
    emit->add_option("--y", cfg.y, "mu and measure: conditioning point");
    emit->add_option("--a", cfg.a, "asc: a");
    emit->add_option("--b", cfg.b, "asc: b");
    emit->add_option("--points", cfg.points, "density: sample count")->check(CLI::Range(2u, 10000000u));
    emit->add_option("--m", cfg.m, "measure: rho^2 = q^-m")->check(CLI::Range(0u, 30u));
    emit->add_option("--rho-sign", cfg.rho_sign, "measure: sign of rho")->check(CLI::IsMember({-1, 1}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }
    cfg.command = verify->parsed() ? "verify" : "emit";
    if (cfg.command == "emit" && cfg.target == "density" && !emit->get_option("--format")->count()) cfg.format = "csv";

    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) {
            err << "cannot open " << cfg.output << " for writing\n";
            return kExitUsage;
        }
    }
    std::ostream& sink = cfg.output.empty() ? out : file;

    try {
        if (cfg.command == "emit") {
            if (cfg.target == "density") emit_density(sink, cfg);
            if (cfg.target == "moments") emit_moments(sink, cfg);
            if (cfg.target == "measure") emit_measure(sink, cfg);
            return kExitOk;
        }
        const auto records = run_suite(cfg.target, cfg);
        write_report(sink, cfg, records);
        bool ok = true;
        for (const auto& r : records) {
            if (!r.passed) {
                ok = false;
                err << "check failed: " << r.paper_ref << " " << r.suite << "/" << r.check_id << " residual "
                    << r.residual << '\n';
            }
        }
        return ok ? kExitOk : kExitCheckFailed;
    } catch (const DomainError& e) {
        err << "parameter out of domain: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "invalid arguments: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace qchihara::cli
