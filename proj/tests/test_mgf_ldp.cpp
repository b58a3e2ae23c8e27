#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "betasplit/errors.hpp"
#include "betasplit/hd_exact.hpp"
#include "betasplit/mgf_ldp.hpp"
#include "betasplit/specfun.hpp"

using namespace betasplit;
using namespace betasplit::mgf;

namespace {

// rho(z) by TOMS 748 on boost's digamma.
double rho_oracle(double z) {
    const double psi1 = boost::math::digamma(1.0);
    auto g = [&](double r) { return boost::math::digamma(1.0 + r) - psi1 - z; };
    boost::uintmax_t it = 200;
    const auto br = boost::math::tools::toms748_solve(g, -1.0 + 1e-15, 1.0, boost::math::tools::eps_tolerance<double>(52), it);
    return 0.5 * (br.first + br.second);
}

// sup_r [ (psi(1+r) - psi(1)) x - r ] over r in (-1, 1]: brute Legendre transform.
double legendre_oracle(double x) {
    const double psi1 = boost::math::digamma(1.0);
    auto neg = [&](double r) { return -((boost::math::digamma(1.0 + r) - psi1) * x - r); };
    const auto best = boost::math::tools::brent_find_minima(neg, -1.0 + 1e-9, 1.0, 50);
    return -best.second;
}

}  // namespace

TEST_CASE("rho") {
    CHECK(rho(0.0) == 0.0);
    CHECK(rho(1.0 - 1e-8) > 1.0 - 1e-6);
    double prev = -2.0;
    for (double z : {-5.0, -2.0, -1.0, 0.0, 0.5, 0.9, 0.99}) {
        const double r = rho(z);
        CHECK(r > prev);
        prev = r;
        CHECK(std::abs(r - rho_oracle(z)) < 1e-13);
    }
    CHECK_THROWS_AS(rho(1.0), DomainError);
}

TEST_CASE("CLT parameters") {
    const CltParams p = clt_params();
    CHECK(std::abs(p.mu - 0.6079) < 5e-5);
    CHECK(std::abs(p.sigma2 - 0.5401) < 5e-5);
    CHECK(std::abs(p.mu_fd - 1.0 / static_cast<double>(specfun::kZeta2)) < 1e-6);
    CHECK(std::abs(p.sigma2_fd - p.sigma2) < 1e-6);
    CHECK(p.verified);
}

TEST_CASE("mgf approximation") {
    for (std::int64_t n : {2, 100, 5000}) CHECK(mgf_approx(n, 0.0).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mgf_prefactor(0.0) == doctest::Approx(1.0L).epsilon(1e-15));
    // Prefactor is continuous through the series switch at small rho.
    CHECK(std::abs(static_cast<double>(mgf_prefactor(1e-4) - mgf_prefactor(2e-4))) < 1e-3);
    for (double z : {-2.0, -0.5, 0.3, 0.5, 0.7}) {
        const MgfApprox a = mgf_approx(2000, z);
        CHECK(a.rel_error_order == doctest::Approx(-std::min(1.0, specfun::sigma_star() + rho(z))));
        CHECK(std::abs(a.value / hd::mgf_exact(2000, z) - 1.0) <= 0.1 * std::pow(2000.0, a.rel_error_order));
    }
}

TEST_CASE("log mgf growth rate") {
    // log E exp(z D_n) / log n -> rho(z); the constant prefactor makes the
    // deviation decay like 1/log n.
    const double z = -1.0;
    const double r = rho(z);
    const double pre = std::log(static_cast<double>(mgf_prefactor(z)));
    for (std::int64_t n : {1000000, 1000000000}) {
        const double L = std::log(static_cast<double>(n));
        const double rate = std::log(mgf_approx(n, z).value) / L;
        CHECK(std::abs(rate - r - pre / L) < 1e-3);
    }
    // Gamma-ratio part alone: log(Gamma(n)/Gamma(n - rho))/log n -> rho.
    const double L = std::log(1e6);
    CHECK(std::abs(static_cast<double>(specfun::log_gamma_ratio_ld(1000000, -r)) / L - r) < 1e-3);
}

TEST_CASE("rate function") {
    CHECK(std::abs(rate_function(x0()).lambda_star) < 1e-12);
    CHECK(rate_function(0.0).lambda_star == 1.0);
    CHECK(rate_function(2.0).lambda_star == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rate_function(-0.5).lambda_star == std::numeric_limits<double>::infinity());
    for (double x = x1(); x <= 3.0; x += 0.05) CHECK(std::abs(rate_function(x).lambda_star - (x - 1.0)) < 1e-10);
    for (double x = 0.05; x + 0.1 <= 3.0 + 1e-12; x += 0.05) {
        const double a = rate_function(x).lambda_star, b = rate_function(x + 0.05).lambda_star, c = rate_function(x + 0.1).lambda_star;
        CHECK(b <= 0.5 * (a + c) + 1e-12);
    }
    for (double x : {0.1, 0.4, 0.9, 1.3, 2.5}) CHECK(std::abs(rate_function(x).lambda_star - legendre_oracle(x)) < 1e-9);
}

TEST_CASE("rate function derivative and duality") {
    const double h = 1e-5;
    for (double x : {0.2, 0.6, 1.0, 1.4, 1.7, 2.5}) {
        const double fd = (rate_function(x + h).lambda_star - rate_function(x - h).lambda_star) / (2.0 * h);
        CHECK(std::abs(fd - rate_function(x).derivative) < 1e-6);
    }
    const double xl = x1() * (1.0 - 1e-12), xr = x1() * (1.0 + 1e-12);
    CHECK(std::abs(rate_function(xl).derivative - rate_function(xr).derivative) < 1e-8);
    for (double x : {0.3, 0.8, 1.2, 2.0}) {
        const RateFunctionSample s = rate_function(x);
        for (double z : {-3.0, -1.0, 0.0, 0.4, 0.9}) CHECK(x * z - rho(z) <= s.lambda_star + 1e-10);
        if (x < x1()) CHECK(std::abs(x * s.derivative - rho(s.derivative) - s.lambda_star) < 1e-10);
    }
}

TEST_CASE("tail regimes") {
    CHECK(tail_regime(0.3) == TailRegime::lower_exact);
    CHECK(tail_regime(1.0) == TailRegime::upper_exact);
    CHECK(tail_regime(2.0) == TailRegime::upper_bound_only);
    CHECK(regime_name(TailRegime::upper_exact) == "upper_exact");
    CHECK_THROWS_AS(tail_regime(0.0), DomainError);
}
