#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "betasplit/errors.hpp"
#include "betasplit/specfun.hpp"

using namespace betasplit;
using namespace betasplit::specfun;
using hp = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0) == 0.0);
    CHECK(harmonic(1) == 1.0);
    CHECK(harmonic(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
    for (std::int64_t n : {2, 10, 1000}) {
        const double psi = boost::math::digamma(static_cast<double>(n));
        CHECK(std::abs(harmonic(n - 1) - (psi + static_cast<double>(kEulerGamma))) < 1e-12);
    }
    // Beyond the table the asymptotic route takes over; compare with a direct sum.
    long double direct = 0.0L;
    for (std::int64_t k = 1; k <= 200000; ++k) direct += 1.0L / k;
    CHECK(std::abs(harmonic(200000) - static_cast<double>(direct)) < 1e-12);
}

TEST_CASE("digamma on the real line") {
    CHECK(digamma(1.0) == doctest::Approx(-static_cast<double>(kEulerGamma)).epsilon(1e-15));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - static_cast<double>(kEulerGamma)).epsilon(1e-15));
    const double oracle10 = static_cast<double>(boost::math::digamma(hp(10)));
    CHECK(std::abs(digamma(10.0) - oracle10) < 1e-14);
    for (double x : {-2.5, -0.3, 0.1, 0.7, 3.3, 17.0, 123.4}) {
        const double oracle = static_cast<double>(boost::math::digamma(hp(x)));
        CHECK(std::abs(digamma(x) - oracle) < 1e-13 * std::max(1.0, std::abs(oracle)));
    }
    CHECK_THROWS_AS(digamma(-2.0), PoleError);
    CHECK_THROWS_AS(digamma(0.0), PoleError);
}

TEST_CASE("digamma recurrence property") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(1.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double s = u(rng);
        CHECK(std::abs(digamma(s + 1.0) - digamma(s) - 1.0 / s) < 1e-12);
    }
}

TEST_CASE("complex digamma") {
    // Real axis matches the real routine.
    for (double x : {0.3, 2.0, 25.0}) CHECK(std::abs(digamma(cplx(x, 0.0)) - digamma(x)) < 1e-14);
    // Recurrence, conjugation and reflection.
    for (cplx s : {cplx(-0.5, 3.0), cplx(0.2, -7.0), cplx(-3.3, 0.4), cplx(1.4, 40.0)}) {
        CHECK(std::abs(digamma(s + 1.0) - digamma(s) - 1.0 / s) < 1e-12);
        CHECK(std::abs(digamma(std::conj(s)) - std::conj(digamma(s))) < 1e-13);
        const double pi = static_cast<double>(kPi);
        const cplx refl = digamma(1.0 - s) - digamma(s) - pi / std::tan(pi * s);
        CHECK(std::abs(refl) < 1e-11);
    }
    // Asymptotic series against the recurrence lift: a point with Re s >= 20
    // and the same point reached by stepping up from Re s = 0.5.
    const cplx far(20.5, 3.0);
    cplx lifted = digamma(cplx(0.5, 3.0));
    for (int k = 0; k < 20; ++k) lifted += 1.0 / (cplx(0.5 + k, 3.0));
    CHECK(std::abs(digamma(far) - lifted) < 1e-13);
}

TEST_CASE("polygamma") {
    const double z2 = static_cast<double>(kZeta2), z3 = static_cast<double>(kZeta3);
    CHECK(polygamma(1, 1.0) == doctest::Approx(z2).epsilon(1e-15));
    CHECK(polygamma(2, 1.0) == doctest::Approx(-2.0 * z3).epsilon(1e-14));
    CHECK(polygamma(1, 2.0) == doctest::Approx(z2 - 1.0).epsilon(1e-15));
    for (int k = 0; k <= 3; ++k) {
        for (double x : {-1.5, 0.25, 3.0, 60.0}) {
            const double oracle = static_cast<double>(boost::math::polygamma(k, hp(x)));
            CHECK(std::abs(polygamma(k, x) - oracle) < 1e-12 * std::max(1.0, std::abs(oracle)));
        }
    }
    for (int k = 4; k <= 8; ++k) {
        const long double oracle = static_cast<long double>(boost::math::polygamma(k, hp("0.7")));
        CHECK(std::abs(polygamma_ld(k, 0.7L) / oracle - 1.0L) < 1e-14L);
    }
    // Complex polygamma reduces to the real one and satisfies the recurrence.
    for (int k = 1; k <= 3; ++k) {
        CHECK(std::abs(polygamma(k, cplx(2.5, 0.0)) - polygamma(k, 2.5)) < 1e-13);
        const cplx s(-0.4, 2.0);
        const double sign = (k % 2 == 0) ? -1.0 : 1.0;
        const cplx step = sign * std::tgamma(k + 1.0) / std::pow(s, k + 1);
        CHECK(std::abs(polygamma(k, s + 1.0) - polygamma(k, s) + step) < 1e-11);
    }
    CHECK_THROWS_AS(polygamma(4, 1.0), UnsupportedOrderError);
}

TEST_CASE("log_gamma") {
    CHECK(std::abs(log_gamma(cplx(1.0, 0.0))) < 1e-15);
    const double oracle = static_cast<double>(log(sqrt(boost::math::constants::pi<hp>())));
    CHECK(std::abs(log_gamma(cplx(0.5, 0.0)) - oracle) < 1e-14);
    const cplx s(-0.5, 3.0);
    const cplx d = log_gamma(s + 1.0) - log_gamma(s) - std::log(s);
    const double two_pi = 2.0 * static_cast<double>(kPi);
    CHECK(std::abs(d.real()) < 1e-13);
    CHECK(std::abs(d.imag() - two_pi * std::round(d.imag() / two_pi)) < 1e-12);
    // |Gamma(s)| matches boost's lgamma on the real axis, including negatives.
    for (double x : {0.3, 4.5, 30.0, -0.5, -2.7}) {
        CHECK(std::abs(log_gamma(cplx(x, 0.0)).real() - boost::math::lgamma(x)) < 1e-12);
    }
    // Continuity along a vertical line through Re s < 0.
    cplx prev = log_gamma(cplx(-1.3, 0.0));
    for (double t = 0.05; t <= 30.0; t += 0.05) {
        const cplx cur = log_gamma(cplx(-1.3, t));
        CHECK(std::abs(cur.imag() - prev.imag()) < 1.0);
        prev = cur;
    }
}

TEST_CASE("gamma ratios") {
    for (std::int64_t n : {1, 5, 100}) {
        CHECK(gamma_ratio(n, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(gamma_ratio(n, 1.0) == doctest::Approx(1.0 / n).epsilon(1e-14));
    }
    const double oracle = static_cast<double>(boost::math::tgamma(hp(10)) / boost::math::tgamma(hp("10.5")));
    CHECK(std::abs(gamma_ratio(10, 0.5) / oracle - 1.0) < 1e-14);
    for (std::int64_t n : {3, 40, 1000000}) {
        for (double b : {0.5, 1.5}) {
            CHECK(std::abs(gamma_ratio(n, b) - gamma_ratio(n, b - 1.0) / (n + b - 1.0)) < 1e-12);
        }
    }
    const cplx s(0.7, 4.0);
    const cplx lr = log_gamma_ratio(20, s);
    CHECK(std::abs(lr - (log_gamma(cplx(20.0, 0.0)) - log_gamma(20.0 + s))) < 1e-12);
}

TEST_CASE("roots of psi(s) = psi(1)") {
    const RootTable t = psi_roots(-static_cast<double>(kEulerGamma), 2);
    CHECK(t.positive_root == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(t.root(1) + 0.567) < 5e-4);
    CHECK(std::abs(t.root(2) + 1.628) < 5e-4);
    const RootTable many = standard_roots(12);
    for (const PsiRoot& r : many.roots) {
        const double lo = -r.index + 1e-9, hi = -(r.index - 1) - 1e-9;
        CHECK(r.root > lo);
        CHECK(r.root < hi);
        // psi - a changes sign exactly once on a fine grid over the bracket.
        const double a = many.target;
        int changes = 0;
        double prev = boost::math::digamma(lo + 1e-6) - a;
        for (int g = 1; g <= 400; ++g) {
            const double x = lo + 1e-6 + (hi - lo - 2e-6) * g / 400.0;
            const double v = boost::math::digamma(x) - a;
            if ((v > 0) != (prev > 0)) ++changes;
            prev = v;
        }
        CHECK(changes == 1);
        CHECK(std::abs(boost::math::digamma(r.root) - a) < 1e-11);
    }
}

TEST_CASE("sigma_star") {
    const RootTable t = psi_roots(1.0 - static_cast<double>(kEulerGamma), 1);
    CHECK(sigma_star() == doctest::Approx(1.0 + t.magnitude(1)).epsilon(1e-15));
    CHECK(std::abs(sigma_star() - 1.457) < 5e-4);
}

TEST_CASE("constants bundle") {
    const ConstantBundle& c = constants();
    CHECK(c.zeta3 == doctest::Approx(boost::math::zeta(3.0)).epsilon(1e-15));
    CHECK(c.zeta4 == doctest::Approx(std::pow(static_cast<double>(kPi), 4) / 90.0).epsilon(1e-15));
    CHECK(c.bernoulli_even.at(0) == doctest::Approx(1.0 / 6.0));
    CHECK(c.bernoulli_even.at(1) == doctest::Approx(-1.0 / 30.0));
}
