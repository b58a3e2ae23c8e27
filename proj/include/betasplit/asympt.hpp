#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "betasplit/series.hpp"
#include "betasplit/specfun.hpp"

namespace betasplit::asympt {

struct Term {
    std::string label;
    long double value;
};

struct AsymptoticValue {
    long double value = 0.0L;
    std::vector<Term> terms;
    int pole_count = 0;
    double error_order = 0.0;  // error is O(n^error_order), up to log factors
};

inline constexpr int kDefaultPoles = 2;
inline constexpr int kMaxMomentOrder = 6;

// Constants of the expansions.
long double c0();  // zeta(3)/zeta(2)^2 + gamma/zeta(2)
long double b0();  // 3 gamma^2/pi^2 + (zeta(3)/zeta(2)^2) gamma + zeta(3)^2/zeta(2)^3 + 1/10
/// Coefficient -Gamma(|s_i|+1)/psi'(s_i) of the i-th pole term of E[D_n].
long double ed_pole_coefficient(int i, const specfun::RootTable& roots);

AsymptoticValue ed_expansion(std::int64_t n, int N, const specfun::RootTable& roots);
AsymptoticValue el_expansion(std::int64_t n, int N, const specfun::RootTable& roots);
AsymptoticValue length_expansion(std::int64_t n, int N, const specfun::RootTable& roots);

/// k! Res_{s = 1 - s_i} Gamma(s) Gamma(n)/Gamma(n+s) (psi(1-s) - psi(1))^{-k},
/// with s_0 = 1 (pole at 0).
double moment_residue(int k, int pole_index, std::int64_t n);
AsymptoticValue moment_expansion(int k, std::int64_t n, int N);

/// Local series of the residue integrand around its pole; exposed for tests.
LaurentSeries moment_integrand_series(int k, int pole_index, std::int64_t n, int terms);

long double var_d_approx(std::int64_t n);
double a_limit(int j);

}  // namespace betasplit::asympt
