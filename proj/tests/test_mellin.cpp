#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "betasplit/asympt.hpp"
#include "betasplit/errors.hpp"
#include "betasplit/hd_exact.hpp"
#include "betasplit/mellin.hpp"
#include "betasplit/specfun.hpp"

using namespace betasplit;
using namespace betasplit::mellin;
using specfun::harmonic;

namespace {

const double kSixOverPi2 = static_cast<double>(6.0L / (specfun::kPi * specfun::kPi));

// Mellin transform int_0^1 x^{s-1} F(x) dx by boost Gauss-Kronrod, after
// x = u^4 to smooth the endpoint at 0.
cplx transform(const std::function<double(double)>& F, cplx s) {
    auto w = [&](double u) {
        if (u <= 0.0) return cplx(0.0);
        return 4.0 * std::pow(cplx(u, 0.0), 4.0 * s - 1.0) * F(u * u * u * u);
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    return {GK::integrate([&](double u) { return w(u).real(); }, 0.0, 1.0, 15, 1e-12),
            GK::integrate([&](double u) { return w(u).imag(); }, 0.0, 1.0, 15, 1e-12)};
}

double f_n(int n, double x) { return -std::expm1((n - 1) * std::log1p(-x)); }

double H_n(int n, double x) {
    double s = 0.0, c = 1.0;
    for (int k = 1; k <= n - 1; ++k) {
        c = c * (n - k) / k;
        s += harmonic(k) * c * std::pow(x, k) * std::pow(1.0 - x, n - 1 - k);
    }
    return s;
}

double lambda_n(int n, double x) {
    if (x < 1e-8) return 0.5 * n * (n - 1) * x;
    return (1.0 - std::pow(1.0 - x, n) - n * x * std::pow(1.0 - x, n - 1)) / x;
}

}  // namespace

TEST_CASE("mellin_U") {
    CHECK(std::abs(mellin_U(2.0, 1) - cplx(1.0)) < 1e-14);
    CHECK(std::abs(mellin_U(3.0, 1) - cplx(2.0 / 3.0)) < 1e-14);
    CHECK(std::abs(mellin_U(3.0, 2) - cplx(2.0 * 4.0 / 9.0)) < 1e-14);
    for (double e : {1e-2, 1e-4, 1e-6}) {
        CHECK(std::abs((e * mellin_U(1.0 + e, 1)).real() - kSixOverPi2) < 2.0 * e);
        CHECK(std::abs((-e * mellin_U(1.0 - e, 1)).real() - kSixOverPi2) < 2.0 * e);
    }
    CHECK(std::abs(mellin_U(0.0, 1)) == 0.0);
    CHECK(std::abs(mellin_U(-2.0, 1)) == 0.0);
    CHECK_THROWS_AS(mellin_U(1.0, 1), PoleError);
    const specfun::RootTable r = specfun::standard_roots(2);
    CHECK_THROWS_AS(mellin_U(r.root(1), 1), PoleError);
    // The subtracted remainder stays bounded through s = 1.
    const cplx at1 = mellin_U_remainder(1.0);
    for (double e : {1e-3, 1e-5, 1e-7}) {
        CHECK(std::abs(mellin_U_remainder(1.0 + e) - at1) < 10.0 * e + 1e-10);
        CHECK(std::abs(mellin_U_remainder(cplx(1.0, e)) - at1) < 10.0 * e + 1e-10);
    }
}

TEST_CASE("transform values at special points") {
    for (int n : {2, 5, 30}) {
        CHECK(std::abs(mellin_fn(0.0, n) - cplx(harmonic(n - 1))) < 1e-13);
        CHECK(std::abs(mellin_fn(1.0, n) - cplx(1.0 - 1.0 / n)) < 1e-13);
        const double h = harmonic(n - 1);
        const double hn0 = 0.5 * h * h + static_cast<double>(specfun::kZeta2) / 2.0 - 0.5 * specfun::polygamma(1, static_cast<double>(n));
        CHECK(std::abs(mellin_Hn(0.0, n) - cplx(hn0)) < 1e-12);
        CHECK(std::abs(mellin_lambda(0.0, n) - cplx(n - 1.0)) < 1e-12);
    }
    for (cplx s : {cplx(0.3, 0.0), cplx(-0.5, 2.0), cplx(4.0, -1.0)}) {
        CHECK(std::abs(mellin_fn(s, 2) - 1.0 / (s + 1.0)) < 1e-13);
        CHECK(std::abs(mellin_Hn(s, 2) - 1.0 / (s + 1.0)) < 1e-13);
        CHECK(std::abs(mellin_lambda(s, 2) - 1.0 / (s + 1.0)) < 1e-13);
        for (int n : {3, 9}) CHECK(std::abs(s * mellin_Hn(s, n) + mellin_fn(s, n) - harmonic(n - 1)) < 1e-12);
    }
}

TEST_CASE("transforms are continuous across the Taylor radius") {
    for (int n : {3, 12}) {
        for (double e : {2e-3, 1.001e-3, 0.999e-3, 5e-4}) {
            CHECK(std::abs(mellin_fn(e, n) - mellin_fn(0.0, n)) < 10.0 * e);
            CHECK(std::abs(mellin_Hn(e, n) - mellin_Hn(0.0, n)) < 10.0 * e * n);
        }
    }
    // The s -> 1 limit of mellin_lambda at n = 5 from both sides.
    const cplx left = mellin_lambda(1.0 - 2e-3, 5), right = mellin_lambda(1.0 + 2e-3, 5);
    const cplx mid = mellin_lambda(1.0, 5);
    CHECK(std::abs(mid - 0.5 * (left + right)) < 1e-5);
    CHECK(std::isfinite(mid.real()));
}

TEST_CASE("transforms against direct quadrature") {
    for (int n : {2, 7, 20}) {
        for (cplx s : {cplx(0.5, 0.0), cplx(1.5, 0.0), cplx(2.0, 1.0), cplx(0.3, 3.0)}) {
            CHECK(std::abs(mellin_fn(s, n) - transform([n](double x) { return f_n(n, x); }, s)) < 1e-9);
            CHECK(std::abs(mellin_Hn(s, n) - transform([n](double x) { return H_n(n, x); }, s)) < 1e-9);
            CHECK(std::abs(mellin_lambda(s, n) - transform([n](double x) { return lambda_n(n, x); }, s)) < 1e-9);
        }
    }
}

TEST_CASE("density expansion near zero") {
    const specfun::RootTable roots = specfun::standard_roots(4);
    for (double x : {1e-3, 1e-6, 1e-9}) CHECK(std::abs(x * density_u(x, 0, roots).value - kSixOverPi2) < 1e-12 + x);
    const double x = 0.1;
    const double d2 = density_u(x, 2, roots).value - density_u(x, 1, roots).value;
    CHECK(d2 * std::pow(x, -roots.magnitude(2)) == doctest::Approx(1.0 / specfun::polygamma(1, roots.root(2))));
    CHECK(density_u(x, 2, roots).remainder_bound_order == doctest::Approx(roots.magnitude(3)));
    CHECK_THROWS_AS(density_u(0.6, 0, roots), DomainError);
    // int_0^1 f_n(x) (6/pi^2)/x dx = (6/pi^2) h_{n-1}.
    for (int n : {4, 25}) {
        auto g = [n](double t) { return f_n(n, t) * kSixOverPi2 / t; };
        const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 15, 1e-13);
        CHECK(q == doctest::Approx(kSixOverPi2 * mellin_fn(0.0, n).real()).epsilon(1e-12));
    }
}

TEST_CASE("line integrals against exact values") {
    CHECK(std::abs(line_expectation(Kind::ED, 2, 1).value - 1.0) < 1e-8);
    CHECK(std::abs(line_expectation(Kind::ELambda, 3, 1).value - 5.0 / 3.0) < 1e-8);
    CHECK(std::abs(line_expectation(Kind::MomentK, 3, 2).value - 28.0 / 9.0) < 1e-7);
    const hd::ExactTables t = hd::build_exact_tables(300, 3, {0});
    for (int n : {4, 17, 300}) {
        CHECK(std::abs(line_expectation(Kind::ED, n, 1).value - static_cast<double>(t.ED(n))) < 1e-8);
        CHECK(std::abs(line_expectation(Kind::EL, n, 1).value - static_cast<double>(t.mean_L[n])) < 1e-8);
        CHECK(std::abs(line_expectation(Kind::ELambda, n, 1).value - static_cast<double>(t.mean_length[n])) < 1e-7);
        CHECK(std::abs(line_expectation(Kind::MomentK, n, 3).value - static_cast<double>(t.moment(3, n))) < 1e-7);
    }
    const ContourResult r = line_expectation(Kind::ED, 10, 1);
    CHECK(r.panels > 0);
    CHECK(std::abs(r.tail) <= 2.0 * r.tail_envelope + 1e-10);
}

TEST_CASE("contour independence") {
    for (Kind kind : {Kind::ED, Kind::EL, Kind::ELambda}) {
        ContourSpec a, b;
        a.sigma = -0.8;
        b.sigma = -0.2;
        const double va = line_expectation(kind, 25, 1, a).value, vb = line_expectation(kind, 25, 1, b).value;
        CHECK(std::abs(va - vb) < 2.0 * a.abs_tol);
    }
    ContourSpec bad;
    bad.sigma = -0.0005;
    CHECK_THROWS_AS(line_expectation(Kind::ED, 5, 1, bad), PoleError);
    bad.sigma = 0.5;
    CHECK_THROWS_AS(line_expectation(Kind::ED, 5, 1, bad), DomainError);
}

TEST_CASE("MGF line integral") {
    CHECK(std::abs(line_mgf(50, 0.0).value - 1.0) < 1e-9);
    for (double z : {-3.0, -0.5, 0.5, 0.9}) CHECK(std::abs(line_mgf(50, z).value / hd::mgf_exact(50, z) - 1.0) < 1e-8);
    ContourSpec alt = default_mgf_contour();
    alt.sigma = 1.2;
    CHECK(std::abs(line_mgf(30, 0.5, alt).value - line_mgf(30, 0.5).value) < 1e-9);
    const MgfContourResult r = line_mgf(1000, 0.5);
    CHECK(std::abs(r.value - r.residue_term - r.remainder.value) < 1e-12);
    CHECK(std::abs(r.remainder.value) * std::pow(1000.0, specfun::sigma_star()) < 1.0);
}

TEST_CASE("kind names") {
    for (Kind k : {Kind::ED, Kind::EL, Kind::ELambda, Kind::MomentK}) CHECK(parse_kind(kind_name(k)) == k);
    CHECK_THROWS_AS(parse_kind("nope"), UsageError);
}
