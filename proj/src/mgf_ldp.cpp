#include "betasplit/mgf_ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "betasplit/errors.hpp"
#include "betasplit/specfun.hpp"

namespace betasplit::mgf {

using namespace specfun;

namespace {

// Newton on y in (lo, hi) for a decreasing or increasing g, falling back to
// bisection whenever a step leaves the bracket.
template <typename G, typename DG>
long double bracketed_newton(G g, DG dg, long double lo, long double hi, long double y, bool increasing) {
    for (int it = 0; it < 200; ++it) {
        const long double gy = g(y);
        if (gy == 0.0L) return y;
        if ((gy < 0.0L) == increasing) lo = y;
        else hi = y;
        long double next = y - gy / dg(y);
        if (!(next > lo && next < hi)) next = 0.5L * (lo + hi);
        if (std::abs(next - y) <= 4.0L * std::numeric_limits<long double>::epsilon() * std::max(1.0L, std::abs(y))) {
            return next;
        }
        y = next;
    }
    throw NonconvergenceError("Newton iteration did not converge");
}

}  // namespace

double rho(double z) {
    if (!(z < 1.0)) throw DomainError("rho: z must be < 1");
    if (z == 0.0) return 0.0;
    const long double psi1 = -kEulerGamma;
    auto g = [z, psi1](long double r) { return digamma_ld(1.0L + r) - psi1 - z; };
    auto dg = [](long double r) { return polygamma_ld(1, 1.0L + r); };
    const long double start = std::clamp(static_cast<long double>(z) / kZeta2, -0.95L, 0.95L);
    return static_cast<double>(bracketed_newton(g, dg, -1.0L, 1.0L, start, true));
}

long double mgf_prefactor(double z) {
    if (!(z < 1.0)) throw DomainError("mgf_prefactor: z must be < 1");
    const long double r = rho(z);
    long double z_over_rho;
    if (std::abs(r) < 1e-4L) {
        // z/rho = sum_{m>=1} psi^{(m)}(1) rho^{m-1}/m!
        z_over_rho = 0.0L;
        long double f = 1.0L, p = 1.0L;
        for (int m = 1; m <= 6; ++m) {
            f *= m;
            z_over_rho += polygamma_ld(m, 1.0L) * p / f;
            p *= r;
        }
    } else {
        z_over_rho = static_cast<long double>(z) / r;
    }
    // -z Gamma(-rho) = (z/rho) Gamma(1 - rho)
    return z_over_rho * std::tgamma(1.0L - r) / polygamma_ld(1, 1.0L + r);
}

MgfApprox mgf_approx(std::int64_t n, double z) {
    if (n < 2) throw DomainError("mgf_approx: n must be >= 2");
    if (!(z < 1.0)) throw DomainError("mgf_approx: z must be < 1");
    const double r = rho(z);
    const long double value = mgf_prefactor(z) * gamma_ratio_ld(n, -static_cast<long double>(r));
    return MgfApprox{static_cast<double>(value), -std::min(1.0, sigma_star() + r)};
}

CltParams clt_params() {
    CltParams p;
    p.mu = static_cast<double>(1.0L / kZeta2);
    p.sigma2 = static_cast<double>(2.0L * kZeta3 / (kZeta2 * kZeta2 * kZeta2));
    const double h1 = 1e-5;
    p.mu_fd = (rho(h1) - rho(-h1)) / (2.0 * h1);
    const double h2 = 1e-3;
    p.sigma2_fd = (rho(h2) - 2.0 * rho(0.0) + rho(-h2)) / (h2 * h2);
    p.verified = std::abs(p.mu_fd - p.mu) <= 1e-6 && std::abs(p.sigma2_fd - p.sigma2) <= 1e-6;
    return p;
}

double x0() { return static_cast<double>(1.0L / kZeta2); }
double x1() { return static_cast<double>(1.0L / (kZeta2 - 1.0L)); }

RateFunctionSample rate_function(double x) {
    RateFunctionSample s{x, -1.0, 0.0, 0.0};
    const double inf = std::numeric_limits<double>::infinity();
    if (x < 0.0) {
        s.lambda_star = inf;
        s.derivative = -inf;
        return s;
    }
    if (x == 0.0) {
        // Limits as x -> 0+: rho_hat -> -1, derivative -> -inf.
        s.lambda_star = 1.0;
        s.derivative = -inf;
        return s;
    }
    const long double psi1 = -kEulerGamma;
    long double r;
    if (x >= x1()) {
        r = 1.0L;
    } else {
        // psi'(y) = 1/x for y = 1 + rho_hat in (0, 2); psi' is decreasing.
        const long double target = 1.0L / x;
        auto g = [target](long double y) { return polygamma_ld(1, y) - target; };
        auto dg = [](long double y) { return polygamma_ld(2, y); };
        const long double y0 = std::min(1.9L, std::sqrt(static_cast<long double>(x)));
        r = bracketed_newton(g, dg, 0.0L, 2.0L, y0, false) - 1.0L;
    }
    const long double d = digamma_ld(1.0L + r) - psi1;
    s.rho_hat = static_cast<double>(r);
    s.derivative = static_cast<double>(d);
    s.lambda_star = static_cast<double>(static_cast<long double>(x) * d - r);
    return s;
}

TailRegime tail_regime(double x) {
    if (!(x > 0.0)) throw DomainError("tail_regime: x must be > 0");
    if (x <= x0()) return TailRegime::lower_exact;
    if (x < x1()) return TailRegime::upper_exact;
    return TailRegime::upper_bound_only;
}

std::string regime_name(TailRegime r) {
    switch (r) {
        case TailRegime::lower_exact: return "lower_exact";
        case TailRegime::upper_exact: return "upper_exact";
        case TailRegime::upper_bound_only: return "upper_bound_only";
    }
    return "";
}

}  // namespace betasplit::mgf
