#include "betasplit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "betasplit/asympt.hpp"
#include "betasplit/errors.hpp"
#include "betasplit/hd_exact.hpp"
#include "betasplit/mellin.hpp"
#include "betasplit/mgf_ldp.hpp"
#include "betasplit/simulate.hpp"
#include "betasplit/specfun.hpp"
#include "betasplit/verify.hpp"

namespace betasplit::cli {

using nlohmann::json;
using verify::round15;

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

json jnum(double x) { return std::isfinite(x) ? json(round15(x)) : json(nullptr); }
json jnum(long double x) { return jnum(static_cast<double>(x)); }

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

json roots_json(double target, int count) {
    const specfun::RootTable t = specfun::psi_roots(target, count);
    json j;
    j["target"] = jnum(t.target);
    j["positive_root"] = jnum(t.positive_root);
    j["roots"] = json::array();
    for (const auto& r : t.roots) j["roots"].push_back({{"index", r.index}, {"root", jnum(r.root)}, {"residual", jnum(r.residual)}});
    return j;
}

json constants_json() {
    const mgf::CltParams clt = mgf::clt_params();
    const specfun::RootTable roots = specfun::standard_roots(2);
    json j;
    j["euler_gamma"] = jnum(specfun::kEulerGamma);
    j["zeta2"] = jnum(specfun::kZeta2);
    j["zeta3"] = jnum(specfun::kZeta3);
    j["c0"] = jnum(asympt::c0());
    j["b0"] = jnum(asympt::b0());
    j["mu"] = jnum(clt.mu);
    j["sigma2"] = jnum(clt.sigma2);
    j["sigma_star"] = jnum(specfun::sigma_star());
    j["x0"] = jnum(mgf::x0());
    j["x1"] = jnum(mgf::x1());
    j["ed_pole1_coefficient"] = jnum(asympt::ed_pole_coefficient(1, roots));
    return j;
}

json asympt_json(const std::string& quantity, std::int64_t n, const asympt::AsymptoticValue& v) {
    json j;
    j["quantity"] = quantity;
    j["n"] = n;
    j["value"] = jnum(v.value);
    j["pole_count"] = v.pole_count;
    j["error_order"] = jnum(v.error_order);
    j["terms"] = json::array();
    for (const auto& t : v.terms) j["terms"].push_back({{"label", t.label}, {"value", jnum(t.value)}});
    return j;
}

json stats_json(const sim::SimConfig& c, const sim::SummaryStats& s) {
    json j;
    j["mode"] = sim::mode_name(c.mode);
    j["n"] = c.n;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["streams"] = c.streams;
    if (c.mode == sim::Mode::clade_fraction) j["t"] = jnum(c.t);
    j["count"] = s.count;
    j["mean"] = jnum(s.mean);
    j["variance"] = jnum(s.variance);
    j["stderr"] = jnum(s.std_error);
    j["min"] = jnum(s.min);
    j["max"] = jnum(s.max);
    json extra = json::object();
    for (const auto& [k, v] : s.extra) extra[k] = jnum(v);
    j["extra"] = extra;
    return j;
}

std::ofstream open_file(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    return f;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Critical beta-splitting tree toolkit", "betasplit"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: BETASPLIT_THREADS or available parallelism)")->check(CLI::NonNegativeNumber);

    auto* roots = app.add_subcommand("roots", "roots of psi(s) = a");
    int root_count = 2;
    std::optional<double> root_target;
    roots->add_option("--count", root_count, "number of negative roots")->check(CLI::PositiveNumber);
    roots->add_option("--target", root_target, "a (default psi(1))");

    app.add_subcommand("constants", "constants of the asymptotics");

    auto* exact = app.add_subcommand("exact", "exact tables from the recurrences");
    int ex_nmax = 20, ex_kmax = 2;
    std::string ex_format = "csv";
    exact->add_option("--nmax", ex_nmax)->check(CLI::Range(1, hd::kMeansBudgetN));
    exact->add_option("--kmax", ex_kmax)->check(CLI::Range(1, hd::kMaxMomentOrder));
    exact->add_option("--format", ex_format)->check(CLI::IsMember({"csv", "json"}));

    auto* as = app.add_subcommand("asympt", "asymptotic expansions");
    std::string as_quantity = "ED";
    std::int64_t as_n = 1000;
    int as_poles = asympt::kDefaultPoles, as_k = 1;
    as->add_option("--quantity", as_quantity)->check(CLI::IsMember({"ED", "EL", "ELambda", "moment", "var"}));
    as->add_option("--n", as_n)->check(CLI::Range(std::int64_t{2}, std::numeric_limits<std::int64_t>::max()));
    as->add_option("--poles", as_poles)->check(CLI::NonNegativeNumber);
    as->add_option("--k", as_k, "moment order for --quantity moment")->check(CLI::Range(1, asympt::kMaxMomentOrder));

    auto* me = app.add_subcommand("mellin", "line-integral expectations");
    std::string me_kind = "ED";
    std::int64_t me_n = 10;
    int me_k = 1;
    mellin::ContourSpec me_spec;
    me->add_option("--kind", me_kind, "ED, EL, ELambda or MomentK");
    me->add_option("--n", me_n)->check(CLI::Range(std::int64_t{2}, std::numeric_limits<std::int64_t>::max()));
    me->add_option("--k", me_k)->check(CLI::Range(1, asympt::kMaxMomentOrder));
    me->add_option("--sigma", me_spec.sigma);
    me->add_option("--tail-cutoff", me_spec.tail_cutoff);
    me->add_option("--tol", me_spec.abs_tol);

    auto* mg = app.add_subcommand("mgf", "exact and asymptotic moment generating function");
    std::vector<std::int64_t> mg_n = {100};
    std::vector<double> mg_z = {0.5};
    mg->add_option("--n", mg_n)->delimiter(',');
    mg->add_option("--z", mg_z)->delimiter(',');

    auto* ld = app.add_subcommand("ldp", "large-deviation rate function");
    std::vector<double> ld_x = {0.25, 0.5, 1.0, 1.5, 2.0};
    ld->add_option("--x", ld_x)->delimiter(',');

    auto* si = app.add_subcommand("simulate", "Monte Carlo");
    sim::SimConfig sc;
    std::string si_mode = "chain";
    std::string si_dump;
    si->add_option("--n", sc.n)->check(CLI::PositiveNumber);
    si->add_option("--samples", sc.samples)->check(CLI::PositiveNumber);
    si->add_option("--seed", sc.seed);
    si->add_option("--streams", sc.streams)->check(CLI::PositiveNumber);
    si->add_option("--mode", si_mode)->check(CLI::IsMember({"chain", "tree", "clade_fraction"}));
    si->add_option("--t", sc.t)->check(CLI::NonNegativeNumber);
    si->add_option("--x-grid", sc.x_grid)->delimiter(',');
    si->add_option("--dump", si_dump, "CSV file for raw samples");

    auto* ve = app.add_subcommand("verify", "cross-method verification suites");
    std::string ve_suite = "core";
    std::string ve_json;
    std::vector<std::string> allowed = verify::suite_names();
    allowed.push_back("all");
    ve->add_option("--suite", ve_suite)->check(CLI::IsMember(allowed));
    ve->add_option("--json", ve_json, "write the JSON report here");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*roots) {
            const double target = root_target ? *root_target : -static_cast<double>(specfun::kEulerGamma);
            print_json(out, roots_json(target, root_count));
        } else if (app.got_subcommand("constants")) {
            print_json(out, constants_json());
        } else if (*exact) {
            hd::TableOptions opts;
            opts.occupancy_nmax = 0;
            const hd::ExactTables t = hd::build_exact_tables(ex_nmax, ex_kmax, opts);
            if (ex_format == "csv") {
                out << "n,ED";
                for (int k = 2; k <= ex_kmax; ++k) out << ",ED" << k;
                out << ",EL,ELambda\n";
                for (int n = 1; n <= ex_nmax; ++n) {
                    out << n;
                    for (int k = 1; k <= ex_kmax; ++k) out << "," << num(static_cast<double>(t.moment(k, n)));
                    out << "," << num(static_cast<double>(t.mean_L[static_cast<std::size_t>(n)])) << ","
                        << num(static_cast<double>(t.mean_length[static_cast<std::size_t>(n)])) << "\n";
                }
            } else {
                json j;
                j["n"] = json::array();
                for (int n = 1; n <= ex_nmax; ++n) j["n"].push_back(n);
                for (int k = 1; k <= ex_kmax; ++k) {
                    json col = json::array();
                    for (int n = 1; n <= ex_nmax; ++n) col.push_back(jnum(t.moment(k, n)));
                    j[k == 1 ? "ED" : "ED" + std::to_string(k)] = col;
                }
                json el = json::array(), len = json::array();
                for (int n = 1; n <= ex_nmax; ++n) {
                    el.push_back(jnum(t.mean_L[static_cast<std::size_t>(n)]));
                    len.push_back(jnum(t.mean_length[static_cast<std::size_t>(n)]));
                }
                j["EL"] = el;
                j["ELambda"] = len;
                print_json(out, j);
            }
        } else if (*as) {
            const specfun::RootTable r = specfun::standard_roots(std::max(as_poles + 1, 8));
            if (as_quantity == "ED") print_json(out, asympt_json(as_quantity, as_n, asympt::ed_expansion(as_n, as_poles, r)));
            else if (as_quantity == "EL") print_json(out, asympt_json(as_quantity, as_n, asympt::el_expansion(as_n, as_poles, r)));
            else if (as_quantity == "ELambda") print_json(out, asympt_json(as_quantity, as_n, asympt::length_expansion(as_n, as_poles, r)));
            else if (as_quantity == "moment") {
                json j = asympt_json(as_quantity, as_n, asympt::moment_expansion(as_k, as_n, as_poles));
                j["k"] = as_k;
                print_json(out, j);
            } else {
                json j{{"quantity", "var"}, {"n", as_n}, {"value", jnum(asympt::var_d_approx(as_n))}};
                print_json(out, j);
            }
        } else if (*me) {
            const mellin::Kind kind = mellin::parse_kind(me_kind);
            const mellin::ContourResult r = mellin::line_expectation(kind, me_n, me_k, me_spec);
            json j{{"kind", mellin::kind_name(kind)}, {"n", me_n},          {"k", me_k},           {"sigma", jnum(me_spec.sigma)},
                   {"value", jnum(r.value)},         {"est_error", jnum(r.est_error)}, {"panels", r.panels}};
            print_json(out, j);
        } else if (*mg) {
            out << "n,z,exact,approx,ratio\n";
            for (std::int64_t n : mg_n) {
                if (n < 2 || n > hd::kMeansBudgetN) throw DomainError("mgf: n must be in [2, " + std::to_string(hd::kMeansBudgetN) + "]");
                for (double z : mg_z) {
                    const double e = hd::mgf_exact(static_cast<int>(n), z);
                    const double a = mgf::mgf_approx(n, z).value;
                    out << n << "," << num(z) << "," << num(e) << "," << num(a) << "," << num(a / e) << "\n";
                }
            }
        } else if (*ld) {
            out << "x,rho_hat,lambda_star,derivative,regime\n";
            for (double x : ld_x) {
                const mgf::RateFunctionSample s = mgf::rate_function(x);
                const std::string regime = x > 0.0 ? mgf::regime_name(mgf::tail_regime(x)) : "none";
                out << num(x) << "," << num(s.rho_hat) << "," << num(s.lambda_star) << "," << num(s.derivative) << "," << regime << "\n";
            }
        } else if (*si) {
            sc.mode = sim::parse_mode(si_mode);
            sc.threads = threads;
            sc.keep_samples = !si_dump.empty();
            const sim::SummaryStats s = sim::run(sc);
            print_json(out, stats_json(sc, s));
            if (!si_dump.empty()) {
                std::ofstream f = open_file(si_dump);
                f << "index,value\n";
                for (std::size_t i = 0; i < s.samples.size(); ++i) f << i << "," << num(s.samples[i]) << "\n";
            }
        } else if (*ve) {
            std::vector<std::string> suites;
            if (ve_suite == "all") suites = verify::suite_names();
            else suites = {ve_suite};
            bool ok = true;
            json reports = json::array();
            for (const std::string& name : suites) {
                const verify::Report rep = verify::run_suite(name, threads);
                out << rep.table();
                ok = ok && rep.passed();
                reports.push_back(rep.to_json());
            }
            if (!ve_json.empty()) {
                std::ofstream f = open_file(ve_json);
                f << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
            }
            return ok ? kExitOk : kExitVerifyFailed;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace betasplit::cli
