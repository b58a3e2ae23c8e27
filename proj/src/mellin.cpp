#include "betasplit/mellin.hpp"

#include <cmath>
#include <functional>

#include "betasplit/errors.hpp"
#include "betasplit/mgf_ldp.hpp"
#include "betasplit/quadrature.hpp"
#include "betasplit/series.hpp"

namespace betasplit::mellin {

using namespace specfun;

namespace {

constexpr int kTaylorTerms = 10;
const double kInvPi = static_cast<double>(1.0L / kPi);
const double kSixOverPi2 = static_cast<double>(6.0L / (kPi * kPi));

// e^w - 1 without cancellation for small |w|.
cplx expm1c(cplx w) {
    const double a = w.real(), b = w.imag();
    const double sh = std::sin(0.5 * b);
    return cplx(std::expm1(a) * std::cos(b) - 2.0 * sh * sh, std::exp(a) * std::sin(b));
}

// Coefficients c_1.. of e^{A(e)} - 1 where A(e) = sum_j [psi^{(j-1)}(p) - psi^{(j-1)}(q)] e^j/j!.
std::vector<cplx> exp_shift_coefficients(long double p, long double q) {
    std::vector<cplx> a(kTaylorTerms, cplx(0.0));
    long double f = 1.0L;
    for (int j = 1; j < kTaylorTerms; ++j) {
        f *= j;
        a[static_cast<std::size_t>(j)] = static_cast<double>((polygamma_ld(j - 1, p) - polygamma_ld(j - 1, q)) / f);
    }
    const LaurentSeries e = LaurentSeries(0, std::move(a)).exp();
    std::vector<cplx> c(kTaylorTerms, cplx(0.0));
    for (int j = 1; j < kTaylorTerms; ++j) c[static_cast<std::size_t>(j)] = e.coefficient(j);
    return c;
}

// sum_{j >= from} c_j e^{j - from}
cplx eval_tail(const std::vector<cplx>& c, int from, cplx e) {
    cplx acc = 0.0;
    for (int j = static_cast<int>(c.size()) - 1; j >= from; --j) acc = acc * e + c[static_cast<std::size_t>(j)];
    return acc;
}

void check_n(std::int64_t n, std::int64_t lo) {
    if (n < lo) throw DomainError("mellin: n must be >= " + std::to_string(lo));
}

void check_strip(cplx s) {
    if (!(s.real() > -1.0)) throw DomainError("mellin: need Re s > -1");
}

// Gamma(s) Gamma(n) / Gamma(n + s)
cplx beta_factor(cplx s, std::int64_t n) { return std::exp(log_gamma(s) + log_gamma_ratio(n, s)); }

// psi(1 - s) - psi(1)
cplx psi_gap(cplx s) { return digamma(1.0 - s) + static_cast<double>(kEulerGamma); }

}  // namespace

ContourSpec default_mgf_contour() {
    ContourSpec spec;
    spec.sigma = sigma_star();
    return spec;
}

std::string kind_name(Kind kind) {
    switch (kind) {
        case Kind::ED: return "ED";
        case Kind::EL: return "EL";
        case Kind::ELambda: return "ELambda";
        case Kind::MomentK: return "MomentK";
    }
    return "";
}

Kind parse_kind(const std::string& name) {
    if (name == "ED") return Kind::ED;
    if (name == "EL") return Kind::EL;
    if (name == "ELambda") return Kind::ELambda;
    if (name == "MomentK") return Kind::MomentK;
    throw UsageError("unknown kind '" + name + "' (expected ED, EL, ELambda, MomentK)");
}

cplx mellin_U(cplx s, int k) {
    if (k < 1) throw DomainError("mellin_U: k must be >= 1");
    if (std::abs(s - 1.0) <= kPoleTolerance) throw PoleError("mellin_U: pole at s = 1");
    if (std::abs(s.imag()) <= kPoleTolerance && s.real() < kPoleTolerance) {
        const double re = s.real();
        if (std::abs(re - std::round(re)) <= kPoleTolerance) return 0.0;  // psi has a pole, U a zero
        const int i = static_cast<int>(std::ceil(-re));
        const double root = standard_roots(i).root(i);
        if (std::abs(re - root) <= kPoleTolerance) throw PoleError("mellin_U: pole at a root of psi(s) = psi(1)");
    }
    const cplx d = digamma(s) + static_cast<double>(kEulerGamma);
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    return fact / std::pow(d, k);
}

cplx mellin_U_remainder(cplx s) {
    const cplx e = s - 1.0;
    if (std::abs(e) < kTaylorRadius) {
        // psi(1 + e) - psi(1) = e T(e); remainder = (1/T - 1/zeta(2))/e
        std::vector<cplx> t(kTaylorTerms);
        long double f = 1.0L;
        for (int j = 0; j < kTaylorTerms; ++j) {
            f *= (j + 1);
            t[static_cast<std::size_t>(j)] = static_cast<double>(polygamma_ld(j + 1, 1.0L) / f);
        }
        const LaurentSeries inv = LaurentSeries(0, std::move(t)).reciprocal();
        std::vector<cplx> c(inv.coefficients());
        return eval_tail(c, 1, e);
    }
    return mellin_U(s, 1) - kSixOverPi2 / e;
}

cplx mellin_fn(cplx s, std::int64_t n) {
    check_n(n, 1);
    check_strip(s);
    if (std::abs(s) < kTaylorRadius) {
        const std::vector<cplx> c = exp_shift_coefficients(1.0L, static_cast<long double>(n));
        return -eval_tail(c, 1, s);
    }
    return -expm1c(log_gamma(s + 1.0) + log_gamma_ratio(n, s)) / s;
}

cplx mellin_Hn(cplx s, std::int64_t n) {
    check_n(n, 1);
    check_strip(s);
    if (std::abs(s) < kTaylorRadius) {
        const std::vector<cplx> c = exp_shift_coefficients(1.0L, static_cast<long double>(n));
        return eval_tail(c, 2, s);
    }
    return (harmonic(n - 1) - mellin_fn(s, n)) / s;
}

cplx mellin_lambda(cplx s, std::int64_t n) {
    check_n(n, 2);
    check_strip(s);
    const cplx e = s - 1.0;
    if (std::abs(e) < kTaylorRadius) {
        const std::vector<cplx> c = exp_shift_coefficients(2.0L, static_cast<long double>(n) + 1.0L);
        return -eval_tail(c, 1, e);
    }
    // Gamma(n+1)/Gamma(n+s) = Gamma(n+1)/Gamma((n+1) + (s-1))
    return -expm1c(log_gamma(s + 1.0) + log_gamma_ratio(n + 1, e)) / e;
}

DensityValue density_u(double x, int N, const RootTable& roots) {
    if (!(x > 0.0 && x < 0.5)) throw DomainError("density_u: x must lie in (0, 1/2)");
    if (N < 0) throw DomainError("density_u: N must be >= 0");
    if (roots.count() < N + 1) throw InsufficientRootsError("density_u: not enough roots");
    double v = kSixOverPi2 / x;
    for (int i = 1; i <= N; ++i) v += std::pow(x, roots.magnitude(i)) / polygamma(1, roots.root(i));
    return DensityValue{v, roots.magnitude(N + 1)};
}

namespace {

void check_spec(const ContourSpec& spec) {
    if (!(spec.tail_cutoff >= 10.0)) throw DomainError("contour: tail cutoff must be >= 10");
    if (!(spec.abs_tol >= 1e-12 && spec.abs_tol <= 1e-4)) throw DomainError("contour: abs_tol must lie in [1e-12, 1e-4]");
    if (spec.max_panels < 1) throw DomainError("contour: max_panels must be positive");
}

// Integrates f over [0, inf) along the line, split at T.
ContourResult integrate_line(const std::function<double(double)>& f, const ContourSpec& spec) {
    const double T = spec.tail_cutoff;
    std::vector<double> breaks;
    for (double b = 1.0; b < T; b *= 2.0) breaks.push_back(b);
    const quad::QuadResult head = quad::integrate(f, 0.0, T, 0.5 * spec.abs_tol, spec.max_panels, breaks);
    const quad::QuadResult tail = quad::integrate_tail(f, T, 0.5 * spec.abs_tol, spec.max_panels);
    ContourResult r;
    r.value = head.value + tail.value;
    r.est_error = head.est_error + tail.est_error;
    r.panels = head.panels + tail.panels;
    r.tail = tail.value;
    r.tail_envelope = std::abs(f(T)) * T;
    // Integrands decay at least like tau^-2 beyond T.
    if (std::abs(tail.value) > 2.0 * r.tail_envelope + spec.abs_tol) {
        throw NonconvergenceError("contour: tail exceeds its tau^-2 envelope");
    }
    return r;
}

}  // namespace

ContourResult line_expectation(Kind kind, std::int64_t n, int k, const ContourSpec& spec) {
    check_n(n, 2);
    check_spec(spec);
    const double sigma = spec.sigma;
    if (!(sigma > -1.0 && sigma < 0.0)) throw DomainError("line_expectation: sigma must lie in (-1, 0)");
    if (sigma > -1e-3 || sigma < -1.0 + 1e-3) throw PoleError("line_expectation: sigma within 1e-3 of a pole");
    if (kind == Kind::MomentK && (k < 1 || k > 6)) throw DomainError("line_expectation: k must be in 1..6");

    std::function<double(double)> f;
    double scale = -kInvPi;
    switch (kind) {
        case Kind::ED:
            f = [n, sigma](double tau) {
                const cplx s(sigma, tau);
                return (beta_factor(s, n) / psi_gap(s)).real();
            };
            break;
        case Kind::EL:
            scale = kInvPi;
            f = [n, sigma](double tau) {
                const cplx s(sigma, tau);
                return (beta_factor(s, n) / (s * psi_gap(s))).real();
            };
            break;
        case Kind::ELambda:
            f = [n, sigma](double tau) {
                const cplx s(sigma, tau);
                const cplx num = std::exp(log_gamma(s + 1.0) + log_gamma_ratio(n + 1, s - 1.0));
                return (num / ((s - 1.0) * psi_gap(s))).real();
            };
            break;
        case Kind::MomentK: {
            double fact = 1.0;
            for (int j = 2; j <= k; ++j) fact *= j;
            scale = -fact * kInvPi;
            f = [n, sigma, k](double tau) {
                const cplx s(sigma, tau);
                return (beta_factor(s, n) / std::pow(psi_gap(s), k)).real();
            };
            break;
        }
    }
    ContourResult r = integrate_line(f, spec);
    r.value *= scale;
    r.tail *= scale;
    r.est_error *= std::abs(scale);
    r.tail_envelope *= std::abs(scale);
    return r;
}

MgfContourResult line_mgf(std::int64_t n, double z, const ContourSpec& spec) {
    check_n(n, 2);
    if (!(z < 1.0)) throw DomainError("line_mgf: z must be < 1");
    check_spec(spec);
    MgfContourResult out;
    if (z == 0.0) {
        out.value = 1.0;
        out.residue_term = 1.0;
        return out;
    }
    const double sigma = spec.sigma;
    const double upper = 1.0 + psi_roots(z - static_cast<double>(kEulerGamma), 1).magnitude(1);
    if (!(sigma > 1.0 && sigma < upper)) throw DomainError("line_mgf: sigma must lie in (1, 1 + |s_1(z - gamma)|)");
    if (sigma < 1.0 + 1e-3 || sigma > upper - 1e-3) throw PoleError("line_mgf: sigma within 1e-3 of a pole");

    const double r = mgf::rho(z);
    out.residue_term = static_cast<double>(mgf::mgf_prefactor(z) * gamma_ratio_ld(n, -r));
    auto f = [n, sigma, z](double tau) {
        const cplx s(sigma, tau);
        return (beta_factor(s, n) / (psi_gap(s) - z)).real();
    };
    out.remainder = integrate_line(f, spec);
    const double scale = -z * kInvPi;
    out.remainder.value *= scale;
    out.remainder.tail *= scale;
    out.remainder.est_error *= std::abs(scale);
    out.remainder.tail_envelope *= std::abs(scale);
    out.value = out.residue_term + out.remainder.value;
    return out;
}

}  // namespace betasplit::mellin
