#include "betasplit/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <string>

#include "betasplit/errors.hpp"

namespace betasplit::specfun {

namespace {

// B_2, B_4, ..., B_20
constexpr std::array<long double, 10> kBernoulliEven = {
    1.0L / 6.0L,      -1.0L / 30.0L,         1.0L / 42.0L,      -1.0L / 30.0L,
    5.0L / 66.0L,     -691.0L / 2730.0L,     7.0L / 6.0L,       -3617.0L / 510.0L,
    43867.0L / 798.0L, -174611.0L / 330.0L};

// Recurrence lift radius for the psi asymptotic series.
constexpr double kSwitchRadius = 16.0;

const long double kLogSqrtTwoPi = 0.918938533204672741780329736405617639L;

long double factorial_ld(int m) {
    long double f = 1.0L;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

bool near_nonpositive_integer(double re, double im) {
    if (std::abs(im) > kPoleTolerance) return false;
    if (re > kPoleTolerance) return false;
    return std::abs(re - std::round(re)) <= kPoleTolerance;
}

void check_pole(double re, double im, const char* what) {
    if (near_nonpositive_integer(re, im)) {
        throw PoleError(std::string(what) + ": argument at a pole (" + std::to_string(re) + ")");
    }
}

const std::vector<long double>& harmonic_table() {
    static const std::vector<long double> table = [] {
        std::vector<long double> h(static_cast<std::size_t>(kHarmonicTableSize) + 1);
        h[0] = 0.0L;
        for (std::size_t i = 1; i < h.size(); ++i) h[i] = h[i - 1] + 1.0L / static_cast<long double>(i);
        return h;
    }();
    return table;
}

// Asymptotic series of psi^{(m)}, m >= 1, valid for large |z| with Re z >= 0.
template <typename T>
T polygamma_series(int m, T z) {
    using R = long double;
    const T inv = T(1) / z;
    T zpow = T(1);
    for (int i = 0; i < m; ++i) zpow *= inv;  // z^{-m}
    T sum = T(factorial_ld(m - 1)) * zpow + T(factorial_ld(m) / 2.0L) * zpow * inv;
    const T inv2 = inv * inv;
    T p = zpow;  // z^{-m-2k}
    R ratio = 1.0L;  // (2k+m-1)!/(2k)!
    for (int k = 1; k <= static_cast<int>(kBernoulliEven.size()); ++k) {
        p *= inv2;
        // (2k+m-1)!/(2k)! from the k-1 value
        ratio = factorial_ld(2 * k + m - 1) / factorial_ld(2 * k);
        sum += T(kBernoulliEven[static_cast<std::size_t>(k - 1)] * ratio) * p;
    }
    return (m % 2 == 1) ? sum : -sum;
}

template <typename T>
T digamma_series(T z) {
    const T inv = T(1) / z;
    const T inv2 = inv * inv;
    T p = T(1);
    T sum = std::log(z) - T(0.5L) * inv;
    for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
        p *= inv2;
        sum -= T(kBernoulliEven[k - 1] / static_cast<long double>(2 * k)) * p;
    }
    return sum;
}

}  // namespace

const ConstantBundle& constants() {
    static const ConstantBundle bundle = [] {
        ConstantBundle c;
        c.euler_gamma = static_cast<double>(kEulerGamma);
        c.zeta2 = static_cast<double>(kZeta2);
        c.zeta3 = static_cast<double>(kZeta3);
        c.zeta4 = static_cast<double>(kZeta4);
        for (long double b : kBernoulliEven) c.bernoulli_even.push_back(static_cast<double>(b));
        return c;
    }();
    return bundle;
}

long double harmonic_ld(std::int64_t n) {
    if (n <= 0) return 0.0L;
    if (n <= kHarmonicTableSize) return harmonic_table()[static_cast<std::size_t>(n)];
    return digamma_ld(static_cast<long double>(n) + 1.0L) + kEulerGamma;
}

double harmonic(std::int64_t n) { return static_cast<double>(harmonic_ld(n)); }

long double digamma_ld(long double x) {
    check_pole(static_cast<double>(x), 0.0, "digamma");
    long double acc = 0.0L;
    while (x < kSwitchRadius) {
        acc -= 1.0L / x;
        x += 1.0L;
    }
    return acc + digamma_series(x);
}

double digamma(double x) { return static_cast<double>(digamma_ld(x)); }

cplx digamma(cplx s) {
    check_pole(s.real(), s.imag(), "digamma");
    cplx acc = 0.0;
    while (s.real() < 0.0 || std::abs(s) < kSwitchRadius) {
        acc -= 1.0 / s;
        s += 1.0;
    }
    return acc + digamma_series(s);
}

long double polygamma_ld(int order, long double x) {
    if (order < 0) throw DomainError("polygamma: negative order");
    if (order == 0) return digamma_ld(x);
    check_pole(static_cast<double>(x), 0.0, "polygamma");
    const long double radius = kSwitchRadius + 2.0L * order;
    const long double mfact = factorial_ld(order);
    const long double sign = (order % 2 == 0) ? 1.0L : -1.0L;  // (-1)^m
    long double acc = 0.0L;
    while (x < radius) {
        // psi^{(m)}(x) = psi^{(m)}(x+1) - (-1)^m m! / x^{m+1}
        acc -= sign * mfact / std::pow(x, static_cast<long double>(order + 1));
        x += 1.0L;
    }
    return acc + polygamma_series(order, x);
}

double polygamma(int k, double x) {
    if (k < 0 || k > 3) throw UnsupportedOrderError("polygamma: order must be in 0..3");
    return static_cast<double>(polygamma_ld(k, x));
}

cplx polygamma(int k, cplx s) {
    if (k < 0 || k > 3) throw UnsupportedOrderError("polygamma: order must be in 0..3");
    if (k == 0) return digamma(s);
    check_pole(s.real(), s.imag(), "polygamma");
    const double radius = kSwitchRadius + 2.0 * k;
    const double mfact = static_cast<double>(factorial_ld(k));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    cplx acc = 0.0;
    while (s.real() < 0.0 || std::abs(s) < radius) {
        acc -= sign * mfact / std::pow(s, k + 1);
        s += 1.0;
    }
    return acc + polygamma_series(k, s);
}

cplx log_gamma(cplx s) {
    check_pole(s.real(), s.imag(), "log_gamma");
    if (s.imag() == 0.0) s = cplx(s.real(), 0.0);  // normalise -0.0
    const bool lower = s.imag() < 0.0;
    cplx acc = 0.0;
    int crossings = 0;
    while (s.real() < 0.0 || std::abs(s) < kSwitchRadius) {
        acc -= std::log(s);
        if (lower && s.real() < 0.0) ++crossings;
        s += 1.0;
    }
    // Stirling series for the principal branch.
    const cplx inv = 1.0 / s;
    const cplx inv2 = inv * inv;
    cplx p = inv;
    cplx series = (s - 0.5) * std::log(s) - s + static_cast<double>(kLogSqrtTwoPi);
    for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
        series += static_cast<double>(kBernoulliEven[k - 1] / static_cast<long double>((2 * k) * (2 * k - 1))) * p;
        p *= inv2;
    }
    // log(s+k) below the axis is continued from above, which keeps the branch
    // continuous where the vertical line crosses the negative real axis.
    const double two_pi = static_cast<double>(2.0L * kPi);
    return series + acc - cplx(0.0, two_pi * crossings);
}

long double log_gamma_ratio_ld(std::int64_t n, long double b) {
    if (n < 1) throw DomainError("gamma_ratio: n must be >= 1");
    if (static_cast<long double>(n) + b <= 0.0L) throw DomainError("gamma_ratio: n + b must be positive");
    long double N = static_cast<long double>(n);
    long double acc = 0.0L;
    const long double lift = 20.0L + std::abs(b);
    while (N < lift) {
        // Gamma(N)/Gamma(N+b) = Gamma(N+1)/Gamma(N+1+b) * (N+b)/N
        acc += std::log1p(b / N);
        N += 1.0L;
    }
    const long double Nb = N + b;
    long double result = -(N - 0.5L) * std::log1p(b / N) - b * std::log(Nb) + b;
    for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
        const long double e = static_cast<long double>(2 * k - 1);
        const long double c = kBernoulliEven[k - 1] / static_cast<long double>((2 * k) * (2 * k - 1));
        result += c * (std::pow(N, -e) - std::pow(Nb, -e));
    }
    return acc + result;
}

long double gamma_ratio_ld(std::int64_t n, long double b) {
    if (b == 0.0L) {
        if (n < 1) throw DomainError("gamma_ratio: n must be >= 1");
        return 1.0L;
    }
    return std::exp(log_gamma_ratio_ld(n, b));
}

double gamma_ratio(std::int64_t n, double b) { return static_cast<double>(gamma_ratio_ld(n, b)); }

cplx log_gamma_ratio(std::int64_t n, cplx s) {
    if (n < 1) throw DomainError("log_gamma_ratio: n must be >= 1");
    if (static_cast<double>(n) + s.real() <= 0.0) throw DomainError("log_gamma_ratio: Re(n+s) must be positive");
    double N = static_cast<double>(n);
    cplx acc = 0.0;
    while (N < 20.0) {
        acc += std::log(1.0 + s / N);
        N += 1.0;
    }
    if (std::abs(s) <= N) {
        const cplx Ns = N + s;
        cplx result = -(N - 0.5) * std::log(1.0 + s / N) - s * std::log(Ns) + s;
        // log(1+w) loses digits for small |w|; switch to log1p on the modulus form.
        const cplx w = s / N;
        if (std::abs(w) < 1e-3) {
            // log(1+w) = w - w^2/2 + w^3/3 - ...
            cplx term = w, lp = 0.0;
            for (int j = 1; j <= 8; ++j) {
                lp += term / static_cast<double>(j);
                term *= -w;
            }
            result = -(N - 0.5) * lp - s * std::log(Ns) + s;
        }
        for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
            const double e = static_cast<double>(2 * k - 1);
            const double c = static_cast<double>(kBernoulliEven[k - 1] / static_cast<long double>((2 * k) * (2 * k - 1)));
            result += c * (std::pow(N, -e) - std::pow(Ns, -e));
        }
        return acc + result;
    }
    return acc + cplx(static_cast<double>(std::lgamma(static_cast<long double>(N))), 0.0) - log_gamma(N + s);
}

namespace {

template <typename F, typename DF>
double refine_root(F f, DF df, double lo, double hi, double& residual) {
    // Bisection to width 1e-3, then Newton kept inside the bracket.
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(fx) <= kRootTolerance * 1e-2) break;
        if (fx < 0.0) lo = x;
        else hi = x;
        double next = x - fx / df(x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
            x = next;
            fx = f(x);
            break;
        }
        x = next;
        fx = f(x);
    }
    residual = std::abs(fx);
    return x;
}

}  // namespace

RootTable psi_roots(double a, int count) {
    if (count < 1) throw DomainError("psi_roots: count must be >= 1");
    RootTable table;
    table.target = a;
    auto f = [a](double x) { return static_cast<double>(digamma_ld(x) - static_cast<long double>(a)); };
    auto df = [](double x) { return static_cast<double>(polygamma_ld(1, x)); };

    if (a == static_cast<double>(-kEulerGamma)) {
        table.positive_root = 1.0;
    } else {
        double lo = 1.0, hi = 1.0;
        while (f(lo) > 0.0) lo *= 0.5;
        while (f(hi) < 0.0) hi *= 2.0;
        if (lo == hi) {
            table.positive_root = lo;
        } else {
            double res = 0.0;
            table.positive_root = refine_root(f, df, lo, hi, res);
        }
    }

    table.roots.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) {
        double res = 0.0;
        const double root = refine_root(f, df, -static_cast<double>(i), -static_cast<double>(i - 1), res);
        table.roots.push_back(PsiRoot{i, root, res});
    }
    return table;
}

RootTable standard_roots(int count) {
    static std::mutex mutex;
    static RootTable cache;
    std::lock_guard<std::mutex> lock(mutex);
    if (cache.count() < count) {
        cache = psi_roots(static_cast<double>(-kEulerGamma), std::max(count, std::max(8, 2 * cache.count())));
    }
    RootTable out = cache;
    return out;
}

double sigma_star() {
    static const double value = [] {
        const RootTable t = psi_roots(static_cast<double>(1.0L - kEulerGamma), 1);
        return 1.0 + t.magnitude(1);
    }();
    return value;
}

}  // namespace betasplit::specfun
