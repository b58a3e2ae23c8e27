#include "betasplit/asympt.hpp"

#include <cmath>
#include <string>

#include "betasplit/errors.hpp"

namespace betasplit::asympt {

using namespace specfun;

namespace {

void require_roots(const RootTable& roots, int N) {
    if (N < 0) throw DomainError("expansion: N must be >= 0");
    if (roots.count() < N + 1) {
        throw InsufficientRootsError("expansion: need " + std::to_string(N + 1) + " roots, have " +
                                     std::to_string(roots.count()));
    }
}

void require_n(std::int64_t n) {
    if (n < 2) throw DomainError("expansion: n must be >= 2");
}

long double tgamma_ld(long double x) { return std::tgamma(x); }

AsymptoticValue finish(std::vector<Term> terms, int N, double error_order) {
    AsymptoticValue v;
    v.terms = std::move(terms);
    for (const Term& t : v.terms) v.value += t.value;
    v.pole_count = N;
    v.error_order = error_order;
    return v;
}

std::string pole_label(int i) { return "pole" + std::to_string(i); }

long double pole_root(int pole_index) {
    return pole_index == 0 ? 1.0L : standard_roots(pole_index).root(pole_index);
}

// psi(s_i - e) - psi(s_i) = e * T(e); returns e * T(e) to L terms.
LaurentSeries psi_shift_series(long double si, int L) {
    std::vector<LaurentSeries::cplx> t(static_cast<std::size_t>(L));
    long double fact = 1.0L;
    for (int j = 0; j < L; ++j) {
        fact *= (j + 1);
        const long double sign = (j % 2 == 0) ? -1.0L : 1.0L;  // (-1)^{j+1}
        t[static_cast<std::size_t>(j)] = static_cast<double>(sign * polygamma_ld(j + 1, si) / fact);
    }
    return LaurentSeries(1, std::move(t));
}

}  // namespace

long double c0() { return kZeta3 / (kZeta2 * kZeta2) + kEulerGamma / kZeta2; }

long double b0() {
    return 3.0L * kEulerGamma * kEulerGamma / (kPi * kPi) + kZeta3 / (kZeta2 * kZeta2) * kEulerGamma +
           kZeta3 * kZeta3 / (kZeta2 * kZeta2 * kZeta2) + 0.1L;
}

long double ed_pole_coefficient(int i, const RootTable& roots) {
    const long double a = roots.magnitude(i);
    return -tgamma_ld(a + 1.0L) / polygamma_ld(1, roots.root(i));
}

AsymptoticValue ed_expansion(std::int64_t n, int N, const RootTable& roots) {
    require_n(n);
    require_roots(roots, N);
    std::vector<Term> terms;
    terms.push_back({"main", 6.0L / (kPi * kPi) * harmonic_ld(n - 1)});
    terms.push_back({"const", kZeta3 / (kZeta2 * kZeta2)});
    for (int i = 1; i <= N; ++i) {
        const long double a = roots.magnitude(i);
        terms.push_back({pole_label(i), ed_pole_coefficient(i, roots) * gamma_ratio_ld(n, a + 1.0L)});
    }
    return finish(std::move(terms), N, -(1.0 + roots.magnitude(N + 1)));
}

AsymptoticValue el_expansion(std::int64_t n, int N, const RootTable& roots) {
    require_n(n);
    require_roots(roots, N);
    const long double h = harmonic_ld(n - 1);
    const long double z2 = kZeta2, z3 = kZeta3;
    std::vector<Term> terms;
    terms.push_back({"main", 3.0L / (kPi * kPi) * h * h});
    terms.push_back({"log", z3 / (z2 * z2) * h});
    terms.push_back({"const", z3 * z3 / (z2 * z2 * z2) + 0.1L});
    terms.push_back({"trigamma", -3.0L / (kPi * kPi) * polygamma_ld(1, static_cast<long double>(n))});
    for (int i = 1; i <= N; ++i) {
        const long double a = roots.magnitude(i);
        const long double coeff = tgamma_ld(a + 1.0L) / ((a + 1.0L) * polygamma_ld(1, roots.root(i)));
        terms.push_back({pole_label(i), coeff * gamma_ratio_ld(n, a + 1.0L)});
    }
    return finish(std::move(terms), N, -(1.0 + roots.magnitude(N + 1)));
}

AsymptoticValue length_expansion(std::int64_t n, int N, const RootTable& roots) {
    require_n(n);
    require_roots(roots, N);
    std::vector<Term> terms;
    terms.push_back({"main", 6.0L / (kPi * kPi) * static_cast<long double>(n)});
    for (int i = 1; i <= N; ++i) {
        const long double a = roots.magnitude(i);
        const long double coeff = tgamma_ld(a + 2.0L) / (a * polygamma_ld(1, roots.root(i)));
        // Gamma(n+1)/Gamma(n+1+a) = n Gamma(n)/Gamma(n+1+a)
        terms.push_back({pole_label(i), -coeff * static_cast<long double>(n) * gamma_ratio_ld(n, a + 1.0L)});
    }
    return finish(std::move(terms), N, -roots.magnitude(N + 1));
}

LaurentSeries moment_integrand_series(int k, int pole_index, std::int64_t n, int terms) {
    if (k < 1 || k > kMaxMomentOrder) throw UnsupportedOrderError("moment_residue: k must be in 1..6");
    if (pole_index < 0) throw DomainError("moment_residue: pole index must be >= 0");
    require_n(n);
    using cplx = LaurentSeries::cplx;
    const int L = terms;

    const long double si = pole_root(pole_index);  // s_0 = 1
    const long double p = 1.0L - si;             // pole location in s
    const LaurentSeries Dk = psi_shift_series(si, L).pow(k).reciprocal();

    // log Gamma(q + e) - log Gamma(q) = sum_j psi^{(j-1)}(q) e^j / j!
    auto log_gamma_shift = [L](long double q) {
        std::vector<cplx> c(static_cast<std::size_t>(L), cplx(0.0));
        long double f = 1.0L;
        for (int j = 1; j < L; ++j) {
            f *= j;
            c[static_cast<std::size_t>(j)] = static_cast<double>(polygamma_ld(j - 1, q) / f);
        }
        return LaurentSeries(0, std::move(c));
    };

    LaurentSeries gamma_part;
    if (pole_index == 0) {
        gamma_part = log_gamma_shift(1.0L).exp().shifted(-1);  // Gamma(e) = Gamma(1+e)/e
    } else {
        gamma_part = log_gamma_shift(p).exp() * cplx(static_cast<double>(tgamma_ld(p)));
    }
    const long double base_ratio = (pole_index == 0) ? 1.0L : gamma_ratio_ld(n, p);
    LaurentSeries ratio_part = (-log_gamma_shift(static_cast<long double>(n) + p)).exp() * cplx(static_cast<double>(base_ratio));

    return gamma_part * ratio_part * Dk;
}

double moment_residue(int k, int pole_index, std::int64_t n) {
    const int L = k + 4;
    const LaurentSeries series = moment_integrand_series(k, pole_index, n, L);
    // Check the denominator inversion before trusting the residue.
    const LaurentSeries Dk = psi_shift_series(pole_root(pole_index), L).pow(k);
    if (reciprocal_residual(Dk) > 1e-10) throw SeriesTruncationError("moment_residue: reciprocal residual too large");

    long double kfact = 1.0L;
    for (int j = 2; j <= k; ++j) kfact *= j;
    return static_cast<double>(kfact * static_cast<long double>(series.residue().real()));
}

AsymptoticValue moment_expansion(int k, std::int64_t n, int N) {
    require_n(n);
    if (N < 0) throw DomainError("moment_expansion: N must be >= 0");
    const RootTable roots = standard_roots(N + 1);
    std::vector<Term> terms;
    terms.push_back({"pole0", moment_residue(k, 0, n)});
    for (int i = 1; i <= N; ++i) terms.push_back({pole_label(i), moment_residue(k, i, n)});
    return finish(std::move(terms), N, -(1.0 + roots.magnitude(N + 1)));
}

long double var_d_approx(std::int64_t n) {
    require_n(n);
    const long double z2 = kZeta2, z3 = kZeta3;
    return 2.0L * z3 / (z2 * z2 * z2) * harmonic_ld(n - 1) + 5.0L * z3 * z3 / (z2 * z2 * z2 * z2) -
           18.0L / (5.0L * kPi * kPi);
}

double a_limit(int j) {
    if (j < 2) throw DomainError("a_limit: j must be >= 2");
    return static_cast<double>(6.0L / (kPi * kPi) * harmonic_ld(j - 1) / (j - 1));
}

}  // namespace betasplit::asympt
