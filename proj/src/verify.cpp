#include "betasplit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "betasplit/asympt.hpp"
#include "betasplit/errors.hpp"
#include "betasplit/hd_exact.hpp"
#include "betasplit/mellin.hpp"
#include "betasplit/mgf_ldp.hpp"
#include "betasplit/quadrature.hpp"
#include "betasplit/simulate.hpp"
#include "betasplit/specfun.hpp"

namespace betasplit::verify {

using specfun::kEulerGamma;
using specfun::kPi;
using specfun::kZeta2;
using specfun::kZeta3;

double round15(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

bool Report::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["passed"] = passed();
    j["rows"] = nlohmann::json::array();
    for (const Row& r : rows) {
        nlohmann::json jr;
        jr["quantity"] = r.quantity;
        jr["n"] = r.n;
        nlohmann::json values = nlohmann::json::object();
        for (const auto& [k, v] : r.values) values[k] = round15(v);
        jr["values"] = values;
        jr["metric"] = round15(r.metric);
        jr["bound"] = round15(r.bound);
        jr["pass"] = r.pass;
        j["rows"].push_back(jr);
    }
    return j;
}

Report Report::from_json(const nlohmann::json& j) {
    Report rep;
    rep.suite = j.at("suite").get<std::string>();
    for (const auto& jr : j.at("rows")) {
        Row r;
        r.quantity = jr.at("quantity").get<std::string>();
        r.n = jr.at("n").get<std::int64_t>();
        for (const auto& [k, v] : jr.at("values").items()) r.values[k] = v.is_null() ? NAN : v.get<double>();
        r.metric = jr.at("metric").is_null() ? INFINITY : jr.at("metric").get<double>();
        r.bound = jr.at("bound").get<double>();
        r.pass = jr.at("pass").get<bool>();
        rep.rows.push_back(r);
    }
    return rep;
}

std::string Report::table() const {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-56s %9s %14s %14s  %s\n", "quantity", "n", "metric", "bound", "result");
    os << "suite: " << suite << "\n" << line;
    for (const Row& r : rows) {
        std::snprintf(line, sizeof line, "%-56s %9lld %14.6g %14.6g  %s\n", r.quantity.c_str(), static_cast<long long>(r.n),
                      r.metric, r.bound, r.pass ? "PASS" : "FAIL");
        os << line;
    }
    os << (passed() ? "all rows passed\n" : "some rows FAILED\n");
    return os.str();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"core", "expansions", "mellin", "simulation"};
    return names;
}

namespace {

Row make_row(std::string quantity, std::int64_t n, std::map<std::string, double> values, double metric, double bound) {
    Row r;
    r.quantity = std::move(quantity);
    r.n = n;
    r.values = std::move(values);
    r.metric = round15(metric);
    r.bound = round15(bound);
    r.pass = std::isfinite(r.metric) && r.metric <= r.bound;
    return r;
}

Row diff_row(std::string quantity, std::int64_t n, double actual, double expected, double tol) {
    return make_row(std::move(quantity), n, {{"actual", actual}, {"expected", expected}}, std::abs(actual - expected), tol);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Rows "scaled error within a factor of the median" for one quantity.
void scaled_rows(std::vector<Row>& out, const std::string& quantity, const std::vector<std::int64_t>& ns,
                 const std::vector<double>& exact, const std::vector<double>& approx, const std::vector<double>& scale) {
    std::vector<double> scaled(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) scaled[i] = std::abs(exact[i] - approx[i]) * scale[i];
    const double med = median(scaled);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double ratio = scaled[i] / med;
        const double metric = ratio > 0.0 ? std::max(ratio, 1.0 / ratio) : INFINITY;
        out.push_back(make_row(quantity + " scaled error / median", ns[i],
                               {{"exact", exact[i]}, {"expansion", approx[i]}, {"scaled_error", scaled[i]}, {"median", med}},
                               metric, kScaledErrorFactor));
    }
}

// ---------------------------------------------------------------- core

void core_suite(Report& rep) {
    auto& rows = rep.rows;
    const specfun::RootTable roots = specfun::standard_roots(5);
    rows.push_back(diff_row("root s1 (3 d.p.)", 0, roots.root(1), -0.567, 5e-4));
    rows.push_back(diff_row("root s2 (3 d.p.)", 0, roots.root(2), -1.628, 5e-4));
    double worst_residual = 0.0;
    double bracket_violation = 0.0;
    for (const auto& r : roots.roots) {
        worst_residual = std::max(worst_residual, r.residual);
        if (!(r.root > -r.index && r.root < -(r.index - 1))) bracket_violation = 1.0;
    }
    rows.push_back(make_row("root residual max", 0, {}, worst_residual, specfun::kRootTolerance));
    rows.push_back(make_row("root bracket violations", 0, {}, bracket_violation, 0.0));
    rows.push_back(diff_row("positive root of psi(s)=psi(1)", 0, roots.positive_root, 1.0, 0.0));

    rows.push_back(diff_row("zeta2 = psi'(1)", 0, specfun::polygamma(1, 1.0), static_cast<double>(kZeta2), 1e-14));
    rows.push_back(diff_row("-2 zeta3 = psi''(1)", 0, specfun::polygamma(2, 1.0), static_cast<double>(-2.0L * kZeta3), 1e-12));
    rows.push_back(diff_row("c0 (10 d.p.)", 0, static_cast<double>(asympt::c0()), 0.795155660439, 5e-11));
    rows.push_back(diff_row("b0 (5 d.p.)", 0, static_cast<double>(asympt::b0()), 0.78234, 5e-6));
    const mgf::CltParams clt = mgf::clt_params();
    rows.push_back(diff_row("mu (4 d.p.)", 0, clt.mu, 0.6079, 5e-5));
    rows.push_back(diff_row("sigma2 (4 d.p.)", 0, clt.sigma2, 0.5401, 5e-5));
    rows.push_back(diff_row("mu = rho'(0) by finite difference", 0, clt.mu_fd, clt.mu, 1e-6));
    rows.push_back(diff_row("sigma2 = rho''(0) by finite difference", 0, clt.sigma2_fd, clt.sigma2, 1e-6));
    rows.push_back(diff_row("sigma_star (3 d.p.)", 0, specfun::sigma_star(), 1.457, 5e-4));
    rows.push_back(diff_row("ED pole-1 coefficient (4 d.p.)", 0, static_cast<double>(asympt::ed_pole_coefficient(1, roots)), -0.0943, 5e-5));

    // Small-n ground truth, three methods.
    const hd::ExactTables t = hd::build_exact_tables(200, 2, {200});
    const double tol = 1e-7;
    rows.push_back(diff_row("E[D_3] recurrence", 3, static_cast<double>(t.ED(3)), 4.0 / 3.0, tol));
    rows.push_back(diff_row("E[D_3] alternating sum", 3, hd::alt_sum_ED(3, 30), 4.0 / 3.0, tol));
    rows.push_back(diff_row("E[D_3] line integral", 3, mellin::line_expectation(mellin::Kind::ED, 3, 1).value, 4.0 / 3.0, tol));
    rows.push_back(diff_row("E[L_3] recurrence", 3, static_cast<double>(t.mean_L[3]), 5.0 / 3.0, tol));
    rows.push_back(diff_row("E[L_3] line integral", 3, mellin::line_expectation(mellin::Kind::EL, 3, 1).value, 5.0 / 3.0, tol));
    rows.push_back(diff_row("E[Lambda_3] recurrence", 3, static_cast<double>(t.mean_length[3]), 5.0 / 3.0, tol));
    rows.push_back(diff_row("E[Lambda_3] line integral", 3, mellin::line_expectation(mellin::Kind::ELambda, 3, 1).value, 5.0 / 3.0, tol));
    rows.push_back(diff_row("a(3,2) recurrence", 3, t.occupancy(3, 2), 2.0 / 3.0, tol));
    rows.push_back(diff_row("a(3,2) closed form", 3, hd::occupancy_closed_form(3, 2, 30), 2.0 / 3.0, tol));
    rows.push_back(diff_row("E[D_3^2] recurrence", 3, static_cast<double>(t.moment(2, 3)), 28.0 / 9.0, tol));
    rows.push_back(diff_row("E[D_3^2] line integral", 3, mellin::line_expectation(mellin::Kind::MomentK, 3, 2).value, 28.0 / 9.0, tol));

    // Cross identities over the whole table.
    double worst_d = 0.0, worst_l = 0.0, worst_len = 0.0;
    for (int n = 2; n <= t.nmax; ++n) {
        long double sd = 0.0L, sl = 0.0L;
        for (int j = 2; j <= n; ++j) {
            sd += t.occupancy(n, j) / specfun::harmonic_ld(j - 1);
            sl += t.occupancy(n, j);
        }
        worst_d = std::max(worst_d, static_cast<double>(std::abs(sd - t.ED(n))));
        worst_l = std::max(worst_l, static_cast<double>(std::abs(sl - t.mean_L[static_cast<std::size_t>(n)])));
        if (n <= 100) {
            const std::vector<double> counts = hd::subtree_counts(n, t);
            long double s = 0.0L;
            for (int j = 2; j <= n; ++j) s += counts[static_cast<std::size_t>(j)] / specfun::harmonic_ld(j - 1);
            worst_len = std::max(worst_len, static_cast<double>(std::abs(s - t.mean_length[static_cast<std::size_t>(n)])));
        }
    }
    rows.push_back(make_row("E[D_n] = sum_j a(n,j)/h_{j-1}, n <= 200", 200, {}, worst_d, 1e-10));
    rows.push_back(make_row("E[L_n] = sum_j a(n,j), n <= 200", 200, {}, worst_l, 1e-10));
    rows.push_back(make_row("E[Lambda_n] = sum_j E[N_n(j)]/h_{j-1}, n <= 100", 100, {}, worst_len, 1e-10));
    rows.push_back(diff_row("hop pmf mean vs E[L_50]", 50, hd::hop_pmf(50).mean(), static_cast<double>(t.mean_L[50]), 1e-10));

    // Residue engine against the closed forms.
    for (std::int64_t n : {10, 100, 1000}) {
        const long double h = specfun::harmonic_ld(n - 1);
        const long double z2 = kZeta2, z3 = kZeta3;
        const long double k1 = h / z2 + z3 / (z2 * z2);
        const long double k2 = h * h / (z2 * z2) + 4.0L * z3 / (z2 * z2 * z2) * h + 6.0L * z3 * z3 / (z2 * z2 * z2 * z2) -
                               18.0L / (5.0L * kPi * kPi) - specfun::polygamma_ld(1, static_cast<long double>(n)) / (z2 * z2);
        rows.push_back(diff_row("residue k=1 at 0", n, asympt::moment_residue(1, 0, n), static_cast<double>(k1), 1e-10));
        rows.push_back(diff_row("residue k=2 at 0", n, asympt::moment_residue(2, 0, n), static_cast<double>(k2), 1e-10));
        const long double p1 = asympt::ed_pole_coefficient(1, roots) * specfun::gamma_ratio_ld(n, roots.magnitude(1) + 1.0L);
        rows.push_back(diff_row("residue k=1 at pole 1", n, asympt::moment_residue(1, 1, n), static_cast<double>(p1), 1e-10));
    }

    // Rate function.
    rows.push_back(make_row("Lambda*(x0)", 0, {{"x0", mgf::x0()}}, std::abs(mgf::rate_function(mgf::x0()).lambda_star), 1e-12));
    rows.push_back(diff_row("Lambda*(0)", 0, mgf::rate_function(0.0).lambda_star, 1.0, 0.0));
    double lin = 0.0;
    for (double x = mgf::x1(); x <= 3.0 + 1e-12; x += 0.01) lin = std::max(lin, std::abs(mgf::rate_function(x).lambda_star - (x - 1.0)));
    rows.push_back(make_row("Lambda*(x) = x - 1 on [x1, 3]", 0, {}, lin, 1e-10));
    double chord = 0.0;
    for (int i = 1; i + 1 <= 60; ++i) {
        const double a = 0.05 * i, b = 0.05 * (i + 1), c = 0.05 * (i + 2);
        if (c > 3.0 + 1e-12) break;
        const double la = mgf::rate_function(a).lambda_star, lb = mgf::rate_function(b).lambda_star,
                     lc = mgf::rate_function(c).lambda_star;
        chord = std::max(chord, lb - 0.5 * (la + lc));
    }
    rows.push_back(make_row("Lambda* chord violation on [0.05, 3]", 0, {}, std::max(chord, 0.0), 1e-9));

    // Schema: the rows so far survive a JSON round trip.
    const nlohmann::json j = rep.to_json();
    const Report back = Report::from_json(nlohmann::json::parse(j.dump()));
    const bool same = back.to_json() == j;
    rows.push_back(make_row("report JSON round trip", 0, {}, same ? 0.0 : 1.0, 0.0));
}

// ---------------------------------------------------------- expansions

void expansions_suite(Report& rep) {
    auto& rows = rep.rows;
    const specfun::RootTable roots = specfun::standard_roots(5);
    const std::vector<std::int64_t> ns = {100, 200, 400, 800, 1600, 3200};
    const hd::ExactTables t = hd::build_exact_tables(3200, 3, {0});

    auto collect = [&](auto exact_fn, auto approx_fn, auto scale_fn, const std::string& name) {
        std::vector<double> ex, ap, sc;
        for (std::int64_t n : ns) {
            ex.push_back(exact_fn(n));
            ap.push_back(approx_fn(n));
            sc.push_back(scale_fn(n));
        }
        scaled_rows(rows, name, ns, ex, ap, sc);
    };
    auto idx = [](std::int64_t n) { return static_cast<std::size_t>(n); };

    // Differences are formed in long double before rounding, since the
    // expansion errors at n = 3200 are near double resolution.
    auto ed_err = [&](std::int64_t n) { return t.ED(static_cast<int>(n)) - asympt::ed_expansion(n, 2, roots).value; };
    collect([&](std::int64_t n) { return static_cast<double>(ed_err(n)); }, [](std::int64_t) { return 0.0; },
            [&](std::int64_t n) { return std::pow(static_cast<double>(n), 1.0 + roots.magnitude(3)); }, "ED expansion N=2");
    collect([&](std::int64_t n) { return static_cast<double>(t.mean_L[idx(n)] - asympt::el_expansion(n, 2, roots).value); },
            [](std::int64_t) { return 0.0; },
            [&](std::int64_t n) { return std::pow(static_cast<double>(n), 1.0 + roots.magnitude(3)); }, "EL expansion N=2");
    collect([&](std::int64_t n) { return static_cast<double>(t.mean_length[idx(n)] - asympt::length_expansion(n, 1, roots).value); },
            [](std::int64_t) { return 0.0; }, [&](std::int64_t n) { return std::pow(static_cast<double>(n), roots.magnitude(2)); },
            "ELambda expansion N=1");
    collect([&](std::int64_t n) { return static_cast<double>(t.var_D(static_cast<int>(n)) - asympt::var_d_approx(n)); },
            [](std::int64_t) { return 0.0; },
            [](std::int64_t n) { return static_cast<double>(n) / std::log(static_cast<double>(n)); }, "var D_n approximation");
    for (int j : {2, 3, 5}) {
        const std::vector<double> col = hd::occupancy_column(j, 3200);
        collect([&](std::int64_t n) { return col[idx(n)]; }, [&](std::int64_t) { return asympt::a_limit(j); },
                [&](std::int64_t n) { return std::pow(static_cast<double>(n), 1.0 + roots.magnitude(1)); },
                "a(n," + std::to_string(j) + ") -> a(" + std::to_string(j) + ")");
    }

    const double el2000 = static_cast<double>(asympt::el_expansion(2000, 2, roots).value);
    const double ex2000 = static_cast<double>(t.mean_L[2000]);
    rows.push_back(make_row("EL expansion relative error", 2000, {{"exact", ex2000}, {"expansion", el2000}},
                            std::abs(el2000 / ex2000 - 1.0), 1e-6));
    const double m3 = static_cast<double>(asympt::moment_expansion(3, 2000, 2).value);
    const double e3 = static_cast<double>(t.moment(3, 2000));
    rows.push_back(make_row("moment_expansion k=3 relative error", 2000, {{"exact", e3}, {"expansion", m3}}, std::abs(m3 / e3 - 1.0), 1e-4));
    const double err0 = std::abs(static_cast<double>(t.mean_length[1000] - asympt::length_expansion(1000, 0, roots).value));
    const double err1 = std::abs(static_cast<double>(t.mean_length[1000] - asympt::length_expansion(1000, 1, roots).value));
    rows.push_back(make_row("ELambda N=1 improvement over N=0 (inverse factor)", 1000, {{"err_N0", err0}, {"err_N1", err1}},
                            err1 / err0, 0.1));
    const double mk1 = static_cast<double>(asympt::moment_expansion(1, 500, 2).value);
    const double ed = static_cast<double>(asympt::ed_expansion(500, 2, roots).value);
    rows.push_back(diff_row("moment_expansion k=1 equals ED expansion", 500, mk1, ed, 1e-12));
}

// -------------------------------------------------------------- mellin

double integrate_transform(const std::function<double(double)>& F, mellin::cplx s, bool imag) {
    // x = u^4 makes the integrand smooth at 0 for Re s >= 1/4.
    auto g = [&](double u) {
        const double x = u * u * u * u;
        const mellin::cplx w = 4.0 * std::pow(mellin::cplx(u, 0.0), 4.0 * s - 1.0) * F(x);
        return imag ? w.imag() : w.real();
    };
    return quad::integrate(g, 0.0, 1.0, 1e-12, 20000, {0.1, 0.5}).value;
}

void mellin_suite(Report& rep) {
    auto& rows = rep.rows;
    using mellin::Kind;
    const specfun::RootTable roots = specfun::standard_roots(5);
    const hd::ExactTables t = hd::build_exact_tables(100, 2, {0});

    for (std::int64_t n : {2, 5, 10, 50, 100}) {
        const auto idx = static_cast<std::size_t>(n);
        struct Q {
            const char* name;
            Kind kind;
            double exact;
            asympt::AsymptoticValue (*expansion)(std::int64_t, int, const specfun::RootTable&);
        };
        const Q qs[] = {{"ED", Kind::ED, static_cast<double>(t.ED(static_cast<int>(n))), asympt::ed_expansion},
                        {"EL", Kind::EL, static_cast<double>(t.mean_L[idx]), asympt::el_expansion},
                        {"ELambda", Kind::ELambda, static_cast<double>(t.mean_length[idx]), asympt::length_expansion}};
        for (const Q& q : qs) {
            const double line = mellin::line_expectation(q.kind, n, 1).value;
            rows.push_back(make_row(std::string(q.name) + " exact vs line integral", n, {{"exact", q.exact}, {"line", line}},
                                    std::abs(q.exact - line), 1e-7));
            if (n >= 50) {
                const asympt::AsymptoticValue a = q.expansion(n, 2, roots);
                const double tol = std::max(1e-7, std::pow(static_cast<double>(n), a.error_order));
                const double v = static_cast<double>(a.value);
                rows.push_back(make_row(std::string(q.name) + " exact vs expansion", n, {{"exact", q.exact}, {"expansion", v}},
                                        std::abs(q.exact - v), tol));
                rows.push_back(make_row(std::string(q.name) + " line vs expansion", n, {{"line", line}, {"expansion", v}},
                                        std::abs(line - v), tol));
            }
        }
    }

    const mellin::ContourSpec base;
    std::vector<double> vals;
    for (double sigma : {-0.8, -0.5, -0.2}) {
        mellin::ContourSpec spec = base;
        spec.sigma = sigma;
        vals.push_back(mellin::line_expectation(Kind::ED, 10, 1, spec).value);
    }
    const double spread = *std::max_element(vals.begin(), vals.end()) - *std::min_element(vals.begin(), vals.end());
    rows.push_back(make_row("ED line integral contour independence", 10, {{"sigma=-0.8", vals[0]}, {"sigma=-0.5", vals[1]}, {"sigma=-0.2", vals[2]}},
                            spread, 2.0 * base.abs_tol));
    rows.push_back(diff_row("MomentK k=1 equals ED", 10, mellin::line_expectation(Kind::MomentK, 10, 1).value,
                            mellin::line_expectation(Kind::ED, 10, 1).value, 2.0 * base.abs_tol));

    // Closed-form transforms against direct quadrature of their integrals.
    for (int n : {2, 7}) {
        auto fn = [n](double x) { return 1.0 - std::pow(1.0 - x, n - 1); };
        auto Hn = [n](double x) {
            double s = 0.0, c = 1.0;
            for (int k = 1; k <= n - 1; ++k) {
                c = c * (n - k) / k;
                s += specfun::harmonic(k) * c * std::pow(x, k) * std::pow(1.0 - x, n - 1 - k);
            }
            return s;
        };
        auto lam = [n](double x) {
            if (x < 1e-8) return 0.5 * n * (n - 1) * x;
            return (1.0 - std::pow(1.0 - x, n) - n * x * std::pow(1.0 - x, n - 1)) / x;
        };
        for (mellin::cplx s : {mellin::cplx(0.5, 0.0), mellin::cplx(1.5, 0.0), mellin::cplx(2.0, 1.0)}) {
            const auto check = [&](const char* name, mellin::cplx closed, const std::function<double(double)>& F) {
                const mellin::cplx direct(integrate_transform(F, s, false), integrate_transform(F, s, true));
                char label[96];
                std::snprintf(label, sizeof label, "%s closed form vs quadrature at s=%g%+gi", name, s.real(), s.imag());
                rows.push_back(make_row(label, n, {{"closed_re", closed.real()}, {"closed_im", closed.imag()}},
                                        std::abs(closed - direct), 1e-8));
            };
            check("mellin_fn", mellin::mellin_fn(s, n), fn);
            check("mellin_Hn", mellin::mellin_Hn(s, n), Hn);
            check("mellin_lambda", mellin::mellin_lambda(s, n), lam);
        }
    }

    // MGF: contour vs exact, and the asymptotic approximation.
    rows.push_back(diff_row("line_mgf at z=0", 50, mellin::line_mgf(50, 0.0).value, 1.0, 1e-9));
    for (double z : {-1.0, 0.5}) {
        const double line = mellin::line_mgf(50, z).value;
        const double exact = hd::mgf_exact(50, z);
        rows.push_back(make_row("line_mgf vs exact, z=" + std::to_string(z).substr(0, 4), 50, {{"line", line}, {"exact", exact}},
                                std::abs(line - exact), 1e-7));
    }
    const mellin::MgfContourResult r1000 = mellin::line_mgf(1000, 0.5);
    const double sig = specfun::sigma_star();
    rows.push_back(make_row("MGF remainder * n^sigma_star (recorded constant)", 1000, {{"remainder", r1000.remainder.value}},
                            std::abs(r1000.remainder.value) * std::pow(1000.0, sig), 1.0));
    for (double z : {-2.0, -0.5, 0.3, 0.7}) {
        const mgf::MgfApprox a = mgf::mgf_approx(2000, z);
        const double exact = hd::mgf_exact(2000, z);
        const double dev = std::abs(a.value / exact - 1.0);
        char label[64];
        std::snprintf(label, sizeof label, "mgf_approx relative deviation, z=%g", z);
        rows.push_back(make_row(label, 2000, {{"exact", exact}, {"approx", a.value}, {"order", a.rel_error_order}}, dev,
                                kMgfDeviationConstant * std::pow(2000.0, a.rel_error_order)));
    }

    // Density expansion near 0.
    const double x = 1e-6;
    rows.push_back(make_row("x * density_u(x, 0) -> 6/pi^2", 0, {{"x", x}},
                            std::abs(x * mellin::density_u(x, 0, roots).value - static_cast<double>(6.0L / (kPi * kPi))), 1e-12));
}

// ---------------------------------------------------------- simulation

double chi_square_p(const std::vector<double>& observed, const std::vector<double>& probs, double draws) {
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = probs[i] * draws;
        stat += (observed[i] - e) * (observed[i] - e) / e;
    }
    boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

void simulation_suite(Report& rep, int threads) {
    auto& rows = rep.rows;

    {
        sim::Rng rng(kSeedHarmonic2);
        const int draws = 100000;
        int ones = 0;
        for (int i = 0; i < draws; ++i) ones += sim::sample_harmonic(2, rng) == 1 ? 1 : 0;
        const double f = static_cast<double>(ones) / draws;
        const double sd = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / draws);
        rows.push_back(make_row("sample_harmonic(2) frequency of 1 (z-score)", 2, {{"freq", f}}, std::abs(f - 2.0 / 3.0) / sd, 4.0));
    }
    {
        sim::Rng rng(kSeedHarmonic100);
        const int m = 100, draws = 1000000;
        std::vector<double> obs(m, 0.0), p(m);
        for (int i = 0; i < draws; ++i) obs[static_cast<std::size_t>(sim::sample_harmonic(m, rng) - 1)] += 1.0;
        for (int j = 1; j <= m; ++j) p[static_cast<std::size_t>(j - 1)] = 1.0 / (j * specfun::harmonic(m));
        const double pv = chi_square_p(obs, p, draws);
        rows.push_back(make_row("sample_harmonic(100) chi-square -log10 p", m, {{"p", pv}}, -std::log10(pv), 3.0));
    }
    for (int m : {3, 10, 100, 10000}) {
        sim::Rng rng(kSeedSplit + static_cast<std::uint64_t>(m));
        const int draws = 1000000;
        const hd::SplitKernel k = hd::build_kernel(m);
        std::vector<double> obs(static_cast<std::size_t>(m - 1), 0.0);
        for (int i = 0; i < draws; ++i) obs[static_cast<std::size_t>(sim::sample_split(m, rng) - 1)] += 1.0;
        const double pv = chi_square_p(obs, k.split_probs, draws);
        rows.push_back(make_row("sample_split chi-square -log10 p", m, {{"p", pv}}, -std::log10(pv), 3.0));
    }
    {
        sim::SimConfig c;
        c.n = 200;
        c.samples = 100000;
        c.seed = kSeedOccupancy;
        c.mode = sim::Mode::chain;
        c.streams = 8;
        c.threads = threads;
        const sim::SummaryStats s = sim::run(c);
        for (int j = 2; j <= 6; ++j) {
            const double a = hd::occupancy_column(j, 200)[200];
            const double f = s.extra.at("visit_" + std::to_string(j));
            const double sd = std::sqrt(a * (1.0 - a) / static_cast<double>(s.count));
            rows.push_back(make_row("visit frequency vs a(200," + std::to_string(j) + ") (z-score)", 200, {{"freq", f}, {"a", a}},
                                    std::abs(f - a) / sd, 4.0));
        }
    }
    {
        sim::SimConfig c;
        c.n = 300;
        c.samples = 20000;
        c.seed = kSeedOccupancy + 1;
        c.streams = 8;
        c.threads = threads;
        c.mode = sim::Mode::chain;
        const sim::SummaryStats chain = sim::run(c);
        c.mode = sim::Mode::tree;
        const sim::SummaryStats tree = sim::run(c);
        const double tm = tree.extra.at("leaf_height_mean");
        const double tse = std::sqrt(tree.extra.at("leaf_height_var") / static_cast<double>(tree.count));
        const double sd = std::sqrt(chain.std_error * chain.std_error + tse * tse);
        rows.push_back(make_row("chain height vs tree mean leaf height (z-score)", 300,
                                {{"chain_mean", chain.mean}, {"tree_mean", tm}}, std::abs(chain.mean - tm) / sd, 5.0));
    }
    {
        const std::int64_t n = 1000000;
        const double pairs[3][2] = {{1.0, 1.0}, {2.0, 0.5}, {1.5, 2.0}};
        for (const auto& st : pairs) {
            sim::SimConfig c;
            c.n = n;
            c.samples = 100000;
            c.seed = kSeedPaintbox;
            c.mode = sim::Mode::clade_fraction;
            c.t = st[1];
            c.streams = 8;
            c.threads = threads;
            const sim::SummaryStats s = sim::run(c);
            char key[48];
            std::snprintf(key, sizeof key, "moment_s=%.15g", st[0]);
            const double m = s.extra.at(key);
            const double se = s.extra.at(std::string(key) + "_stderr");
            const double target = std::exp(-st[1] * static_cast<double>(specfun::digamma_ld(1.0L + st[0]) + kEulerGamma));
            char label[80];
            std::snprintf(label, sizeof label, "paintbox E[(K/n)^%g] at t=%g", st[0], st[1]);
            rows.push_back(make_row(label, n, {{"empirical", m}, {"target", target}, {"stderr", se}}, std::abs(m - target),
                                    4.0 * se + 10.0 / static_cast<double>(n)));
        }
    }
    {
        const std::int64_t n = 1000000;
        sim::SimConfig c;
        c.n = n;
        c.samples = 100000;
        c.seed = kSeedClt;
        c.mode = sim::Mode::chain;
        c.streams = 8;
        c.threads = threads;
        c.x_grid = {1.0};
        const sim::SummaryStats s = sim::run(c);
        const mgf::CltParams clt = mgf::clt_params();
        const double logn = std::log(static_cast<double>(n));
        const double bound = 4.0 / std::sqrt(static_cast<double>(c.samples)) +
                             static_cast<double>(asympt::c0()) / std::sqrt(clt.sigma2 * logn) * 1.1;
        const double sm = s.extra.at("std_mean");
        rows.push_back(make_row("CLT standardized mean", n, {{"std_mean", sm}, {"std_var", s.extra.at("std_var")}}, std::abs(sm), bound));
        const double p = s.extra.at("tail_x=1");
        const double expo = -std::log(p) / logn;
        const double target = mgf::rate_function(1.0).lambda_star;
        rows.push_back(make_row("tail exponent -log P(D_n > log n)/log n vs Lambda*(1)", n,
                                {{"p_hat", p}, {"exponent", expo}, {"lambda_star", target}}, std::abs(expo - target), 0.15));
    }
}

}  // namespace

Report run_suite(const std::string& suite, int threads) {
    Report rep;
    rep.suite = suite;
    if (suite == "core") core_suite(rep);
    else if (suite == "expansions") expansions_suite(rep);
    else if (suite == "mellin") mellin_suite(rep);
    else if (suite == "simulation") simulation_suite(rep, threads);
    else throw UsageError("unknown suite '" + suite + "' (expected core, expansions, mellin, simulation)");
    return rep;
}

}  // namespace betasplit::verify
