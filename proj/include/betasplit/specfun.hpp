#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace betasplit::specfun {

using cplx = std::complex<double>;

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;
inline constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
inline constexpr long double kZeta2 = 1.644934066848226436472415166646025189L;
inline constexpr long double kZeta3 = 1.202056903159594285399738161511449991L;
inline constexpr long double kZeta4 = 1.082323233711138191516003696541167903L;

// Arguments closer than this to a non-positive integer are rejected.
inline constexpr double kPoleTolerance = 1e-12;

struct ConstantBundle {
    double euler_gamma;
    double zeta2;
    double zeta3;
    double zeta4;
    std::vector<double> bernoulli_even;  // B_2, B_4, ..., B_20
};

const ConstantBundle& constants();

/// h_n = 1 + 1/2 + ... + 1/n, with h_0 = 0. Table lookup up to
/// kHarmonicTableSize, psi(n+1) + gamma beyond.
double harmonic(std::int64_t n);
long double harmonic_ld(std::int64_t n);
inline constexpr std::int64_t kHarmonicTableSize = 100000;

double digamma(double x);
long double digamma_ld(long double x);
cplx digamma(cplx s);

// Public polygamma contract covers orders 0..3.
double polygamma(int k, double x);
cplx polygamma(int k, cplx s);

// Real-argument polygamma of any order; used by the residue engine which
// needs derivatives up to order k+3.
long double polygamma_ld(int order, long double x);

/// Branch of log Gamma that is continuous along every vertical line not
/// passing through a pole. Agrees with the principal branch for Re s > 0.
cplx log_gamma(cplx s);

/// Gamma(n) / Gamma(n + b) for n >= 1, n + b > 0.
double gamma_ratio(std::int64_t n, double b);
long double gamma_ratio_ld(std::int64_t n, long double b);
long double log_gamma_ratio_ld(std::int64_t n, long double b);

/// log(Gamma(n) / Gamma(n + s)) for n >= 1, Re(n + s) > 0 (principal branch).
cplx log_gamma_ratio(std::int64_t n, cplx s);

struct PsiRoot {
    int index;        // i >= 1
    double root;      // s_i(a) in (-i, -(i-1))
    double residual;  // |psi(root) - a|
};

struct RootTable {
    double target = 0.0;
    double positive_root = 0.0;
    std::vector<PsiRoot> roots;

    // |s_i| for 1-based i.
    double magnitude(int i) const { return -roots.at(static_cast<std::size_t>(i - 1)).root; }
    double root(int i) const { return roots.at(static_cast<std::size_t>(i - 1)).root; }
    int count() const { return static_cast<int>(roots.size()); }
};

inline constexpr double kRootTolerance = 1e-12;

/// Roots of psi(s) = a: the one in (0, inf) and the first `count` negative ones.
RootTable psi_roots(double a, int count);

/// Roots of psi(s) = psi(1), memoised; at least `count` negative roots.
RootTable standard_roots(int count);

/// 1 + |s_1(psi(2))|, the contour abscissa used for the MGF remainder.
double sigma_star();

}  // namespace betasplit::specfun
